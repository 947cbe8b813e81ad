use gluing::homalg::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn sparse(rows: &[Vec<i64>]) -> SparseMatrix {
    IntMatrix::from_rows(rows).to_sparse()
}

#[test]
fn smith_two_by_two() {
    let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
    let s = smith(&m);
    assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(4)]);
    assert_eq!(s.u.mul(&m).mul(&s.v), s.s);
}

#[test]
fn smith_identity_and_zero() {
    assert_eq!(invariant_factors(&IntMatrix::identity(4)).len(), 4);
    assert!(invariant_factors(&IntMatrix::zeros(3, 2)).is_empty());
}

#[test]
fn free_terms_only() {
    let c = CochainComplex::free(0, vec![2], vec![]);
    assert_eq!(c.cohomology(0, Coeff::Z), AbGroup::free(2));
}

#[test]
fn doubling_cokernel() {
    let c = CochainComplex::free(0, vec![1, 1], vec![sparse(&[vec![2]])]);
    assert_eq!(c.cohomology(1, Coeff::Z), AbGroup::cyclic(2));
    assert_eq!(c.cohomology(0, Coeff::Zmod(2)), AbGroup::cyclic(2));
    assert_eq!(c.cohomology(1, Coeff::Q), AbGroup::zero());
}

#[test]
fn circle_mod_two() {
    let c = CochainComplex::free(0, vec![1, 1], vec![sparse(&[vec![0]])]);
    assert_eq!(c.cohomology(1, Coeff::Zmod(2)), AbGroup::cyclic(2));
    let f = c.induced_map(1, Coeff::Z, Coeff::Zmod(2));
    assert_eq!(f.kernel(), AbGroup::free(1));
    assert_eq!(f.cokernel(), AbGroup::zero());
    assert_eq!(c.induced_kernel(1, Coeff::Z, Coeff::Zmod(2)), AbGroup::free(1));
}

#[test]
fn induced_map_from_zero() {
    let c = CochainComplex::free(0, vec![1, 1], vec![sparse(&[vec![1]])]);
    let f = c.induced_map(1, Coeff::Z, Coeff::Zmod(2));
    assert!(f.source.is_zero());
    assert_eq!(f.kernel(), AbGroup::zero());
}

#[test]
fn moore_complex_identity() {
    // ℤ/2 in degree 1 presented with torsion coordinates, mapped identically to its own reduction
    let c = CochainComplex::with_orders(0, vec![vec![], vec![2], vec![]], vec![SparseMatrix::new(1, 0), SparseMatrix::new(0, 1)]);
    assert_eq!(c.cohomology(1, Coeff::Z), AbGroup::cyclic(2));
    let f = c.induced_map(1, Coeff::Z, Coeff::Zmod(2));
    assert_eq!(f.kernel(), AbGroup::zero());
}

#[test]
fn kernels_and_cokernels() {
    let sum = AbMap::new(AbGroup::free(2), AbGroup::free(1), IntMatrix::from_rows(&[vec![1, 1]]));
    assert_eq!(sum.kernel(), AbGroup::free(1));
    let triple = AbMap::new(AbGroup::free(1), AbGroup::free(1), IntMatrix::from_rows(&[vec![3]]));
    assert_eq!(triple.cokernel(), AbGroup::cyclic(3));
    let p1 = AbMap::new(AbGroup::free(2), AbGroup::free(1), IntMatrix::from_rows(&[vec![1, 0]]));
    let p2 = AbMap::new(AbGroup::free(2), AbGroup::free(1), IntMatrix::from_rows(&[vec![0, 1]]));
    assert_eq!(intersection_of_kernels(&[p1, p2]), AbGroup::zero());
}

#[test]
fn solve_reports_no_solution() {
    let a = IntMatrix::from_rows(&[vec![2]]);
    assert!(solve(&a, &[BigInt::from(3)]).is_none());
    assert_eq!(solve(&a, &[BigInt::from(4)]), Some(vec![BigInt::from(2)]));
}

#[test]
fn abgroup_text_round_trip() {
    for s in ["0", "Z", "Z^2 + Z/2 + (Z/2)^3", "Z/6"] {
        let g: AbGroup = s.parse().unwrap();
        let again: AbGroup = g.to_string().parse().unwrap();
        assert_eq!(g, again);
    }
    assert_eq!("Z/2 + Z/3".parse::<AbGroup>().unwrap(), AbGroup::cyclic(6));
}

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_decomposition_holds(rows in small_matrix(9)) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.s.clone());
        prop_assert_eq!(abs_det(&s.u), BigInt::from(1));
        prop_assert_eq!(abs_det(&s.v), BigInt::from(1));
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        for w in s.diag.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
    }

    #[test]
    fn sparse_matches_dense(rows in small_matrix(12)) {
        let m = IntMatrix::from_rows(&rows);
        prop_assert_eq!(elementary_divisors(&m.to_sparse()), invariant_factors(&m));
    }

    #[test]
    fn determinant_is_diagonal_product(rows in (1usize..7).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith(&m);
        let prod = if s.rank() == m.rows() { s.diag.iter().product() } else { BigInt::from(0) };
        prop_assert_eq!(abs_det(&m), prod);
    }

    #[test]
    fn coefficient_routes_agree(a in small_matrix(5), k in 1i64..4) {
        // complex ℤ^c --b·k--> ... built as d1 ∘ d0 = 0 by d0 = A, d1 = kernel rows of the cokernel
        let m = IntMatrix::from_rows(&a).scale(&BigInt::from(k));
        let left = kernel(&m.transpose()).basis.transpose();
        let c = CochainComplex::free(0, vec![m.cols(), m.rows(), left.rows()], vec![m.to_sparse(), left.to_sparse()]);
        c.check().unwrap();
        for coeff in [Coeff::Z, Coeff::Zmod(2), Coeff::Zmod(4), Coeff::Zmod(3), Coeff::Q] {
            for n in 0..3 {
                prop_assert_eq!(c.cohomology(n, coeff), c.cohomology_dense(n, coeff));
            }
        }
        let chi: i64 = (0..3).map(|n| if n % 2 == 0 { 1 } else { -1 } * c.cohomology(n, Coeff::Q).free_rank as i64).sum();
        prop_assert_eq!(chi, c.euler_characteristic());
    }
}
