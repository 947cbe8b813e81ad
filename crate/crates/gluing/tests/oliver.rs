use gluing::error::Error;
use gluing::functor::*;
use gluing::group::{catalog, corpus, GroupCtx};
use gluing::homalg::{smith, AbGroup, Coeff, IntMatrix};
use gluing::oliver::*;
use gluing::sections::{sections, Collection, Section};
use proptest::prelude::*;

fn ctx(spec: &str) -> GroupCtx {
    GroupCtx::new(catalog(spec).unwrap()).unwrap()
}

fn elementary(c: &GroupCtx, p: usize) -> Vec<usize> {
    c.lattice.elementary_abelian(&c.group, p, true)
}

#[test]
fn steinberg_ranks() {
    for (g, p, cap) in [("C2^3", 2, 3), ("C3^3", 3, 3), ("C5^2", 5, 3), ("C2^4", 2, 4), ("D8", 2, 3)] {
        let c = ctx(g);
        for e in elementary(&c, p) {
            let st = steinberg_module(&c, e, cap).unwrap();
            let r = st.rank as u32;
            assert_eq!(st.dim(), p.pow(r * r.saturating_sub(1) / 2), "{g} subgroup {e}");
        }
    }
    let c = ctx("C2^2");
    let top = steinberg_module(&c, c.lattice.whole(), 3).unwrap();
    assert_eq!((top.flags.len(), top.dim()), (3, 2));
    let c = ctx("C3^2");
    assert_eq!(steinberg_module(&c, c.lattice.whole(), 3).unwrap().dim(), 3);
}

#[test]
fn rank_cap_is_enforced() {
    let c = ctx("C2^4");
    assert_eq!(steinberg_module(&c, c.lattice.whole(), STEINBERG_RANK_CAP).unwrap_err(), Error::RankCap { rank: 4, cap: 3 });
    assert!(matches!(oliver_complex(&Constant::integers(), &c, OliverOptions::default()), Err(Error::RankCap { .. })));
}

#[test]
fn steinberg_action_is_a_representation() {
    for g in ["D8", "C2^3", "XS(3,+)", "D8xC2"] {
        let c = ctx(g);
        let l = &c.lattice;
        let p = c.prime().unwrap();
        for e in elementary(&c, p) {
            let st = steinberg_module(&c, e, 3).unwrap();
            let n: Vec<usize> = l.subgroup(l.normalizer(e)).members().collect();
            for &x in &n {
                let rx = steinberg_action(&c, &st, x);
                assert_eq!(smith(&rx).diag.iter().filter(|d| **d != 1.into() && **d != (-1).into()).count(), 0);
                for &y in n.iter().take(4) {
                    let xy = c.group.mul(x, y);
                    assert_eq!(steinberg_action(&c, &st, xy), rx.mul(&steinberg_action(&c, &st, y)), "{g}");
                }
            }
            for &z in l.subgroup(l.centralizer(e)).members().collect::<Vec<_>>().iter() {
                assert_eq!(steinberg_action(&c, &st, z), IntMatrix::identity(st.dim()));
            }
        }
    }
}

#[test]
fn truncation_of_rank_two() {
    let c = ctx("C2^2");
    let l = &c.lattice;
    let st_e = steinberg_module(&c, l.whole(), 3).unwrap();
    let lines: Vec<usize> = (1..l.whole()).collect();
    let mut total = IntMatrix::zeros(0, st_e.dim());
    for &a in &lines {
        let st_a = steinberg_module(&c, a, 3).unwrap();
        total = total.vstack(&truncation_map(&c, &st_e, &st_a).unwrap());
    }
    assert_eq!((total.rows(), smith(&total).rank()), (3, 2));
    let trivial = steinberg_module(&c, l.trivial(), 3).unwrap();
    assert_eq!(truncation_map(&c, &st_e, &trivial).unwrap_err(), Error::NotIndexP);
}

#[test]
fn equivariant_hom_without_symmetry() {
    let h = equivariant_hom(3, &[0], &[]);
    assert_eq!(h.group, AbGroup::free(3));
    let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
    let h = equivariant_hom(2, &[0], &[(IntMatrix::identity(1), swap)]);
    assert_eq!(h.group, AbGroup::free(1));
    let h = equivariant_hom(1, &[4], &[(IntMatrix::from_rows(&[vec![-1]]), IntMatrix::identity(1))]);
    assert_eq!(h.group, AbGroup::cyclic(2));
}

#[test]
fn rank_one_automorphisms_are_trivial() {
    for g in corpus(32) {
        let c = ctx(&g);
        let l = &c.lattice;
        let p = c.prime().unwrap();
        for e in elementary(&c, p).into_iter().filter(|&e| l.order(e) == p) {
            assert_eq!(l.normalizer(e), l.centralizer(e), "{g}");
        }
    }
}

#[test]
fn dihedral_burnside_dual_shape() {
    let c = ctx("D8");
    let o = oliver_complex(&BurnsideDual::new(), &c, OliverOptions::default()).unwrap();
    assert_eq!(o.term_groups(), vec![AbGroup::free(8), AbGroup::free(9), AbGroup::free(2)]);
    let summands: Vec<usize> = o.terms[1].iter().map(|t| t.hom.group.free_rank).collect();
    assert_eq!(summands.iter().sum::<usize>(), 9);
    assert!(summands.contains(&5));
    assert_eq!(o.terms[2].iter().map(|t| t.hom.group.clone()).collect::<Vec<_>>(), vec![AbGroup::free(1); 2]);
}

#[test]
fn oliver_kernel_is_detection_kernel() {
    for g in ["C4", "D8", "Q8", "C3^2", "D16"] {
        let c = ctx(g);
        let f = BurnsideDual::new();
        let o = oliver_complex(&f, &c, OliverOptions::default()).unwrap();
        assert_eq!(o.cohomology(-1, Coeff::Z).unwrap(), detection_map(&f, &c, Coeff::Z).unwrap().kernel());
    }
}

#[test]
fn coefficient_scope() {
    let c = ctx("C2^3");
    let o = oliver_complex(&Constant::integers(), &c, OliverOptions::default()).unwrap();
    assert_eq!(o.cohomology(2, Coeff::Z).unwrap_err(), Error::CoefficientScope { degree: 2 });
    assert_eq!(o.cohomology(2, Coeff::Zmod(3)).unwrap_err(), Error::CoefficientScope { degree: 2 });
    assert!(o.cohomology(2, Coeff::Zmod(4)).is_ok());
    assert!(o.cohomology(2, Coeff::Q).unwrap().is_zero());
    assert!(o.cohomology(1, Coeff::Z).is_ok());
    assert_eq!(oliver_complex(&Constant::integers(), &ctx("S3"), OliverOptions::default()).unwrap_err(), Error::NotPGroup(6));
}

#[test]
fn vanishing_above_the_rank() {
    for g in ["C2", "D8", "C2^3", "C3^2", "XS(3,+)"] {
        let c = ctx(g);
        let rk = c.p_rank(c.prime().unwrap()) as i32;
        let f = BurnsideDual::new();
        let o = oliver_complex(&f, &c, OliverOptions::default()).unwrap();
        assert_eq!(o.complex.end(), rk - 1);
        for n in rk..rk + 2 {
            assert!(o.cohomology(n, Coeff::Q).unwrap().is_zero());
        }
    }
}

#[test]
fn constant_rational_coefficients_vanish() {
    for g in ["C2^2", "C3^2", "C5^2", "D8", "C2^3"] {
        let c = ctx(g);
        let o = oliver_complex(&Constant::integers(), &c, OliverOptions::default()).unwrap();
        for n in -1..=o.complex.end() {
            assert!(o.cohomology(n, Coeff::Q).unwrap().is_zero(), "{g} degree {n}");
        }
    }
}

#[test]
fn routes_agree_with_torsion_and_reduced_coefficients() {
    for g in ["C2^2", "D8", "C4xC2", "C3^2"] {
        let c = ctx(g);
        let p = c.prime().unwrap() as u64;
        let fs: Vec<Box<dyn Functor>> = vec![
            Box::new(Constant::new(p)),
            Box::new(Atomic::new(&c, Section::new(c.lattice.whole(), c.lattice.whole()), p * p)),
            Box::new(BurnsideDual::new()),
        ];
        for f in &fs {
            let o = oliver_complex(f.as_ref(), &c, OliverOptions::default()).unwrap();
            for coeff in [Coeff::Z, Coeff::Zmod(p), Coeff::Q] {
                let bar = reduced_cohomology(f.as_ref(), &c, Collection::Proper, 1, coeff, DEFAULT_CHAIN_CAP).unwrap();
                for (n, h) in bar {
                    assert_eq!(o.cohomology(n, coeff).unwrap(), h, "{g} {} {coeff} degree {n}", f.name());
                }
            }
        }
    }
}

const SMALL: &[&str] = &["C4", "C2^2", "D8", "Q8", "C4xC2", "C3^2", "C9", "C2^3"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oliver_matches_bar_on_atomic_functors(gi in 0..SMALL.len(), si in 0usize..1000, order in prop::sample::select(vec![0u64, 2, 3, 4])) {
        let c = ctx(SMALL[gi]);
        let all = sections(&c, Collection::All).unwrap();
        let s = all.elements[si % all.len()];
        let f = Atomic::new(&c, s, order);
        let o = oliver_complex(&f, &c, OliverOptions::default()).unwrap();
        let bar = reduced_cohomology(&f, &c, Collection::Proper, 1, Coeff::Z, DEFAULT_CHAIN_CAP).unwrap();
        for (n, h) in bar {
            prop_assert_eq!(o.cohomology(n, Coeff::Z).unwrap(), h, "{} at {} degree {}", SMALL[gi], s, n);
        }
    }
}
