use super::lattice::{intersect, preimage, AbMap, Quotient};
use super::matrix::{IntMatrix, SparseMatrix};
use super::sparse::elementary_divisors;
use super::{AbGroup, Coeff};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use std::sync::OnceLock;

/// Cochain complex of finitely generated abelian groups `C^start → C^{start+1} → ...`.
///
/// Each term is ℤ^dims[k] modulo the cyclic relations in `orders[k]` (0 = free coordinate).
#[derive(Debug)]
pub struct CochainComplex {
    start: i32,
    dims: Vec<usize>,
    orders: Vec<Vec<u64>>,
    diffs: Vec<SparseMatrix>,
    divisors: Vec<OnceLock<Vec<BigInt>>>,
}

impl Clone for CochainComplex {
    fn clone(&self) -> Self {
        CochainComplex::with_orders(self.start, self.orders.clone(), self.diffs.clone())
    }
}

impl CochainComplex {
    /// Complex of free modules with the given differentials (`diffs[k]: C^k → C^{k+1}`).
    pub fn free(start: i32, dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Self {
        let orders = dims.iter().map(|&d| vec![0; d]).collect();
        Self::with_orders(start, orders, diffs)
    }

    pub fn with_orders(start: i32, orders: Vec<Vec<u64>>, diffs: Vec<SparseMatrix>) -> Self {
        let dims: Vec<usize> = orders.iter().map(Vec::len).collect();
        assert_eq!(diffs.len() + 1, dims.len().max(1), "need one differential between consecutive terms");
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!((d.rows(), d.cols()), (dims[k + 1], dims[k]), "differential {k} has wrong shape");
        }
        let divisors = diffs.iter().map(|_| OnceLock::new()).collect();
        CochainComplex { start, dims, orders, diffs, divisors }
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn end(&self) -> i32 {
        self.start + self.dims.len() as i32 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: i32) -> usize {
        self.index(n).map_or(0, |k| self.dims[k])
    }

    pub fn term_orders(&self, n: i32) -> &[u64] {
        self.index(n).map_or(&[], |k| &self.orders[k])
    }

    /// Differential leaving degree `n`.
    pub fn differential(&self, n: i32) -> Option<&SparseMatrix> {
        self.index(n).and_then(|k| self.diffs.get(k))
    }

    fn index(&self, n: i32) -> Option<usize> {
        let k = n - self.start;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    pub fn has_torsion(&self) -> bool {
        self.orders.iter().flatten().any(|&o| o != 0)
    }

    /// Checks that consecutive differentials compose into the relations of the target.
    pub fn check(&self) -> Result<()> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let comp = self.diffs[k + 1].mul(&self.diffs[k]);
            let ord = &self.orders[k + 2];
            for i in 0..comp.rows() {
                for (_, v) in comp.row_entries(i) {
                    let o = ord[i];
                    if o == 0 || !v.is_multiple_of(&BigInt::from(o)) {
                        return Err(Error::NotAComplex(self.start + k as i32 + 1));
                    }
                }
            }
        }
        Ok(())
    }

    fn divisors(&self, k: usize) -> &[BigInt] {
        self.divisors[k].get_or_init(|| elementary_divisors(&self.diffs[k]))
    }

    /// Cohomology at degree `n` after tensoring with the coefficient ring.
    pub fn cohomology(&self, n: i32, coeff: Coeff) -> AbGroup {
        if self.index(n).is_none() {
            return AbGroup::zero();
        }
        if self.has_torsion() {
            return self.cohomology_dense(n, coeff);
        }
        let h = self.integral_free(n);
        match coeff {
            Coeff::Z => h,
            Coeff::Q => AbGroup::free(h.free_rank),
            Coeff::Zmod(_) => {
                let next = self.integral_free(n + 1);
                h.tensor(coeff).direct_sum(&next.tor(coeff))
            }
        }
    }

    fn integral_free(&self, n: i32) -> AbGroup {
        let Some(k) = self.index(n) else { return AbGroup::zero() };
        let prev: &[BigInt] = if k > 0 { self.divisors(k - 1) } else { &[] };
        let next_rank = if k < self.diffs.len() { self.divisors(k).len() } else { 0 };
        let free = self.dims[k] - prev.len() - next_rank;
        let mut orders: Vec<u64> = vec![0; free];
        for d in prev {
            if !d.is_one() {
                orders.push(u64::try_from(d).expect("torsion fits in u64"));
            }
        }
        AbGroup::from_cyclic_orders(&orders)
    }

    fn relations(&self, k: usize, coeff: Coeff) -> IntMatrix {
        let n = self.dims[k];
        let mut cols: Vec<(usize, BigInt)> = Vec::new();
        for (i, &o) in self.orders[k].iter().enumerate() {
            let o = match coeff {
                Coeff::Zmod(m) => {
                    if o == 0 {
                        m
                    } else {
                        o.gcd(&m)
                    }
                }
                _ => o,
            };
            if o != 0 {
                cols.push((i, BigInt::from(o)));
            }
        }
        let mut r = IntMatrix::zeros(n, cols.len());
        for (j, (i, v)) in cols.into_iter().enumerate() {
            r.set(i, j, v);
        }
        r
    }

    /// Cycles and boundaries at degree `n` as lattices in ℤ^dim (boundaries include relations).
    fn cycles_boundaries(&self, k: usize, coeff: Coeff) -> (IntMatrix, IntMatrix) {
        let rel_here = self.relations(k, coeff);
        let cycles = if k < self.diffs.len() {
            preimage(&self.diffs[k].to_dense(), &self.relations(k + 1, coeff))
        } else {
            IntMatrix::identity(self.dims[k])
        };
        let boundaries = if k > 0 { self.diffs[k - 1].to_dense().hstack(&rel_here) } else { rel_here };
        (cycles, boundaries)
    }

    /// Cohomology by explicit lattice quotients (dense; for small complexes and as an oracle).
    pub fn cohomology_dense(&self, n: i32, coeff: Coeff) -> AbGroup {
        let Some(k) = self.index(n) else { return AbGroup::zero() };
        let c = if coeff == Coeff::Q { Coeff::Z } else { coeff };
        let (cycles, boundaries) = self.cycles_boundaries(k, c);
        let g = Quotient::new(&cycles, &boundaries).group().clone();
        if coeff == Coeff::Q {
            AbGroup::free(g.free_rank)
        } else {
            g
        }
    }

    /// Explicit generators of H^n with coefficients in `coeff`, as cochains.
    pub fn cohomology_generators(&self, n: i32, coeff: Coeff) -> (AbGroup, Vec<Vec<BigInt>>) {
        let Some(k) = self.index(n) else { return (AbGroup::zero(), Vec::new()) };
        let (cycles, boundaries) = self.cycles_boundaries(k, coeff);
        let q = Quotient::new(&cycles, &boundaries);
        (q.group().clone(), q.generators())
    }

    /// `H^n` with coefficients in `coeff` as a quotient of cochain lattices, for computing
    /// coordinates of explicit cocycles.
    pub fn cohomology_quotient(&self, n: i32, coeff: Coeff) -> Quotient {
        let k = self.index(n).expect("degree inside the complex");
        let (cycles, boundaries) = self.cycles_boundaries(k, coeff);
        Quotient::new(&cycles, &boundaries)
    }

    /// Map H^n(C; from) → H^n(C; to) induced by a coefficient change that is the identity on
    /// cochain coordinates (e.g. reduction ℤ → ℤ/2).
    pub fn induced_map(&self, n: i32, from: Coeff, to: Coeff) -> AbMap {
        let Some(k) = self.index(n) else {
            return AbMap::new(AbGroup::zero(), AbGroup::zero(), IntMatrix::zeros(0, 0));
        };
        let (zs, bs) = self.cycles_boundaries(k, from);
        let (zt, bt) = self.cycles_boundaries(k, to);
        let qs = Quotient::new(&zs, &bs);
        let qt = Quotient::new(&zt, &bt);
        let gens = qs.generators();
        let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| qt.coords(g)).collect();
        let rows = qt.group().num_generators();
        let matrix = IntMatrix::from_columns(rows, &cols);
        AbMap::new(qs.group().clone(), qt.group().clone(), matrix)
    }

    /// Kernel of the coefficient-change map on H^n, computed on cochains: (Z_from ∩ B_to) / B_from.
    pub fn induced_kernel(&self, n: i32, from: Coeff, to: Coeff) -> AbGroup {
        let Some(k) = self.index(n) else { return AbGroup::zero() };
        let (zs, bs) = self.cycles_boundaries(k, from);
        let (_, bt) = self.cycles_boundaries(k, to);
        let meet = intersect(&zs, &bt);
        let bs_basis = super::snf::lattice_basis(&bs);
        let meet_plus = super::snf::lattice_basis(&meet.hstack(&bs_basis));
        Quotient::new(&meet_plus, &bs).group().clone()
    }

    /// Euler characteristic of the ranks of the terms.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if (self.start + k as i32).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// All of `H^start .. H^end` at once.
    pub fn all_cohomology(&self, coeff: Coeff) -> Vec<(i32, AbGroup)> {
        (self.start..=self.end()).map(|n| (n, self.cohomology(n, coeff))).collect()
    }
}
