use super::matrix::IntMatrix;
use super::snf::{kernel, lattice_basis, smith, Solver};
use super::AbGroup;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Basis of `{x : a x ∈ span(rels)}`; `rels` has `a.rows()` rows.
pub fn preimage(a: &IntMatrix, rels: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows(), rels.rows());
    let n = a.cols();
    if rels.cols() == 0 {
        return kernel(a).basis;
    }
    let stacked = a.hstack(&rels.scale(&BigInt::from(-1)));
    let k = kernel(&stacked).basis;
    let idx: Vec<usize> = (0..n).collect();
    let proj = k.select_rows(&idx);
    lattice_basis(&proj)
}

/// Basis of the intersection of two lattices given by generator columns.
pub fn intersect(l1: &IntMatrix, l2: &IntMatrix) -> IntMatrix {
    assert_eq!(l1.rows(), l2.rows());
    if l1.cols() == 0 || l2.cols() == 0 {
        return IntMatrix::zeros(l1.rows(), 0);
    }
    let stacked = l1.hstack(&l2.scale(&BigInt::from(-1)));
    let k = kernel(&stacked).basis;
    let idx: Vec<usize> = (0..l1.cols()).collect();
    lattice_basis(&l1.mul(&k.select_rows(&idx)))
}

/// The quotient `L / M` of a lattice by a sublattice, with coordinates in its canonical generators.
#[derive(Clone, Debug)]
pub struct Quotient {
    basis: IntMatrix,
    solver: Solver,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// Order of each coordinate after the change of basis (0 = free, 1 = killed).
    orders: Vec<BigInt>,
    kept: Vec<usize>,
    group: AbGroup,
}

impl Quotient {
    /// `basis` must have full column rank; the columns of `sub` must lie in its span.
    pub fn new(basis: &IntMatrix, sub: &IntMatrix) -> Self {
        let l = basis.cols();
        let solver = Solver::new(basis);
        let mut cols = Vec::with_capacity(sub.cols());
        for j in 0..sub.cols() {
            let y = solver.solve(&sub.column(j)).expect("sublattice not contained in lattice");
            cols.push(y);
        }
        let coeffs = IntMatrix::from_columns(l, &cols);
        let sm = smith(&coeffs);
        let mut orders = vec![BigInt::zero(); l];
        for (i, d) in sm.diag.iter().enumerate() {
            orders[i] = d.clone();
        }
        // canonical generator order: torsion (ascending, already a divisibility chain) then free
        let mut kept: Vec<usize> = (0..l).filter(|&i| !orders[i].is_zero() && !orders[i].is_one()).collect();
        kept.extend((0..l).filter(|&i| orders[i].is_zero()));
        let group = AbGroup::from_diagonal(&kept.iter().map(|&i| orders[i].clone()).collect::<Vec<_>>(), 0);
        Quotient { basis: basis.clone(), solver, u: sm.u, u_inv: sm.u_inv, orders, kept, group }
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    /// Coordinates of `x ∈ L` on the canonical generators (torsion coordinates reduced).
    pub fn coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.solver.solve(x).expect("vector not in lattice");
        let y2 = self.u.mul_vec(&y);
        self.kept
            .iter()
            .map(|&i| if self.orders[i].is_zero() { y2[i].clone() } else { y2[i].mod_floor(&self.orders[i]) })
            .collect()
    }

    /// Canonical generators as vectors of the ambient lattice.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.kept.iter().map(|&i| self.basis.mul_vec(&self.u_inv.column(i))).collect()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.solver.solve(x).is_some()
    }
}

/// Homomorphism between canonical presentations: `matrix` maps source generators to target
/// generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbMap {
    pub source: AbGroup,
    pub target: AbGroup,
    pub matrix: IntMatrix,
}

fn relation_matrix(g: &AbGroup) -> IntMatrix {
    let orders = g.orders();
    let n = orders.len();
    let cols: Vec<usize> = (0..n).filter(|&i| orders[i] != 0).collect();
    let mut m = IntMatrix::zeros(n, cols.len());
    for (k, &i) in cols.iter().enumerate() {
        m.set(i, k, BigInt::from(orders[i]));
    }
    m
}

impl AbMap {
    pub fn new(source: AbGroup, target: AbGroup, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows(), target.num_generators());
        assert_eq!(matrix.cols(), source.num_generators());
        AbMap { source, target, matrix }
    }

    /// True if source relations map into target relations.
    pub fn is_well_defined(&self) -> bool {
        let rt = relation_matrix(&self.target);
        let solver = Solver::new(&rt);
        let rs = relation_matrix(&self.source);
        let img = self.matrix.mul(&rs);
        (0..img.cols()).all(|j| {
            let c = img.column(j);
            c.iter().all(Zero::is_zero) || (rt.cols() > 0 && solver.solve(&c).is_some())
        })
    }

    pub fn kernel(&self) -> AbGroup {
        kernel_cokernel(self).0
    }

    pub fn cokernel(&self) -> AbGroup {
        kernel_cokernel(self).1
    }
}

/// Kernel and cokernel of a homomorphism of finitely generated abelian groups.
pub fn kernel_cokernel(f: &AbMap) -> (AbGroup, AbGroup) {
    let rs = relation_matrix(&f.source);
    let rt = relation_matrix(&f.target);
    let m = f.target.num_generators();
    let pre = preimage(&f.matrix, &rt);
    let ker = Quotient::new(&pre, &rs).group().clone();
    let img = f.matrix.hstack(&rt);
    let coker = Quotient::new(&IntMatrix::identity(m), &img).group().clone();
    (ker, coker)
}

/// Intersection of the kernels of maps sharing a source.
pub fn intersection_of_kernels(maps: &[AbMap]) -> AbGroup {
    assert!(!maps.is_empty());
    let src = &maps[0].source;
    let mut stacked = IntMatrix::zeros(0, src.num_generators());
    let mut orders = Vec::new();
    for f in maps {
        assert_eq!(&f.source, src);
        stacked = stacked.vstack(&f.matrix);
        orders.extend(f.target.orders());
    }
    let rows = orders.len();
    let rel_cols: Vec<usize> = (0..rows).filter(|&i| orders[i] != 0).collect();
    let mut rt = IntMatrix::zeros(rows, rel_cols.len());
    for (k, &i) in rel_cols.iter().enumerate() {
        rt.set(i, k, BigInt::from(orders[i]));
    }
    let pre = preimage(&stacked, &rt);
    Quotient::new(&pre, &relation_matrix(src)).group().clone()
}
