use super::{sections, Collection, Section};
use crate::error::Result;
use crate::group::GroupCtx;
use crate::homalg::{kernel, lattice_basis, AbGroup, CochainComplex, Coeff, IntMatrix, Quotient, SparseMatrix};
use num_bigint::BigInt;
use petgraph::unionfind::UnionFind;
use serde::Serialize;
use std::collections::HashMap;

/// Order complex of a finite poset: simplices are strictly increasing chains, listed bottom first.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    pub vertices: usize,
    pub simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// For each group generator, the induced permutation of the simplices in each dimension.
    pub action: Vec<Vec<Vec<usize>>>,
}

/// Builds the order complex of `{0..n}` under `leq`, with a group acting through the given vertex
/// permutations (which must preserve the order).
pub fn order_complex(n: usize, leq: impl Fn(usize, usize) -> bool, vertex_action: &[Vec<usize>]) -> OrderComplex {
    let up: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| a != b && leq(a, b)).collect()).collect();
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|v| vec![v]).collect();
    while let Some(chain) = stack.pop() {
        let d = chain.len() - 1;
        if simplices.len() <= d {
            simplices.resize(d + 1, Vec::new());
        }
        let last = *chain.last().unwrap();
        for &b in up[last].iter().rev() {
            let mut c = chain.clone();
            c.push(b);
            stack.push(c);
        }
        simplices[d].push(chain);
    }
    for dim in simplices.iter_mut() {
        dim.sort();
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        simplices.iter().map(|dim| dim.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
    let action = vertex_action
        .iter()
        .map(|perm| {
            simplices
                .iter()
                .zip(&index)
                .map(|(dim, idx)| dim.iter().map(|s| idx[&s.iter().map(|&v| perm[v]).collect::<Vec<_>>()]).collect())
                .collect()
        })
        .collect();
    OrderComplex { vertices: n, simplices, index, action }
}

impl OrderComplex {
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices.get(dim).map_or(0, Vec::len)
    }

    /// Index of the face obtained by deleting position `i`.
    fn face(&self, dim: usize, s: usize, i: usize) -> usize {
        let mut f = self.simplices[dim][s].clone();
        f.remove(i);
        self.index[dim - 1][&f]
    }

    /// Orbit id of every simplex in each dimension, and one representative per orbit.
    fn orbits(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        (0..self.simplices.len())
            .map(|d| {
                let n = self.count(d);
                let mut uf = UnionFind::<usize>::new(n);
                for gen in &self.action {
                    for s in 0..n {
                        uf.union(s, gen[d][s]);
                    }
                }
                let mut id_of_root = HashMap::new();
                let mut reps = Vec::new();
                let mut orbit = vec![0; n];
                for (s, slot) in orbit.iter_mut().enumerate() {
                    let r = uf.find(s);
                    *slot = *id_of_root.entry(r).or_insert_with(|| {
                        reps.push(s);
                        reps.len() - 1
                    });
                }
                (orbit, reps)
            })
            .collect()
    }

    /// Full simplicial coboundary `δ: C^{dim} → C^{dim+1}`.
    fn coboundary(&self, dim: usize) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.count(dim + 1), self.count(dim));
        for t in 0..self.count(dim + 1) {
            for i in 0..=dim + 1 {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.push(t, self.face(dim + 1, t, i), BigInt::from(sign));
            }
        }
        m
    }

    /// Augmented cochain complex `ℤ → C⁰ → C¹ → ...` (no group action); computes reduced cohomology.
    pub fn reduced_cochains(&self) -> CochainComplex {
        let mut dims = vec![1];
        let mut diffs = Vec::new();
        let top = self.simplices.len();
        if top == 0 {
            return CochainComplex::free(-1, dims, diffs);
        }
        let mut aug = SparseMatrix::new(self.count(0), 1);
        for v in 0..self.count(0) {
            aug.push(v, 0, BigInt::from(1));
        }
        diffs.push(aug);
        for d in 0..top {
            dims.push(self.count(d));
            if d + 1 < top {
                diffs.push(self.coboundary(d));
            }
        }
        CochainComplex::free(-1, dims, diffs)
    }
}

/// Augmented complex of G-invariant cochains, one coordinate per orbit of simplices.
///
/// Degree −1 carries the augmentation so that degree 0 computes reduced cohomology of the orbit
/// space. Stabilizers fix chains pointwise, so every orbit contributes a free coordinate.
pub fn orbit_cochain_complex(x: &OrderComplex) -> CochainComplex {
    let orbits = x.orbits();
    let top = x.simplices.len();
    let mut dims = vec![1];
    let mut diffs = Vec::new();
    if top == 0 {
        return CochainComplex::free(-1, dims, diffs);
    }
    let mut aug = SparseMatrix::new(orbits[0].1.len(), 1);
    for o in 0..orbits[0].1.len() {
        aug.push(o, 0, BigInt::from(1));
    }
    diffs.push(aug);
    for d in 0..top {
        dims.push(orbits[d].1.len());
        if d + 1 < top {
            let (_, reps) = &orbits[d + 1];
            let mut m = SparseMatrix::new(reps.len(), orbits[d].1.len());
            for (row, &t) in reps.iter().enumerate() {
                for i in 0..=d + 1 {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m.push(row, orbits[d].0[x.face(d + 1, t, i)], BigInt::from(sign));
                }
            }
            diffs.push(m);
        }
    }
    CochainComplex::free(-1, dims, diffs)
}

/// `H¹` computed from invariant cocycles of the full cochain complex modulo coboundaries of
/// invariant 0-cochains.
pub fn h1_invariant_cocycles(x: &OrderComplex) -> AbGroup {
    let (n0, n1) = (x.count(0), x.count(1));
    if n1 == 0 {
        return AbGroup::zero();
    }
    let mut rows = x.coboundary(1).to_dense();
    for gen in &x.action {
        let mut inv = IntMatrix::zeros(n1, n1);
        for s in 0..n1 {
            // (c∘g − c)(s) = c(gs) − c(s)
            *inv.get_mut(s, gen[1][s]) += 1;
            *inv.get_mut(s, s) -= 1;
        }
        rows = rows.vstack(&inv);
    }
    let cocycles = kernel(&rows).basis;
    let orbits = x.orbits();
    let d0 = x.coboundary(0).to_dense();
    let mut inv0 = IntMatrix::zeros(n0, orbits[0].1.len());
    for v in 0..n0 {
        inv0.set(v, orbits[0].0[v], BigInt::from(1));
    }
    let boundaries = lattice_basis(&d0.mul(&inv0));
    Quotient::new(&cocycles, &boundaries).group().clone()
}

/// Result of certifying that every comma poset of an inclusion of collections is ℤ-acyclic.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ReductionReport {
    pub sub: String,
    pub sup: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each class representative `w` of `sup`, the poset `{w' ∈ sub : w ⪯ w'}` must be nonempty
/// with vanishing reduced integral cohomology.
pub fn check_reduction_hypothesis(ctx: &GroupCtx, sub: Collection, sup: Collection) -> Result<ReductionReport> {
    let small = sections(ctx, sub)?;
    let big = sections(ctx, sup)?;
    let mut report = ReductionReport { sub: sub.to_string(), sup: sup.to_string(), ..Default::default() };
    for w in big.class_reps(ctx) {
        let ws = big.elements[w];
        let comma: Vec<Section> = small.elements.iter().copied().filter(|s| ws.below(s, ctx)).collect();
        report.checked += 1;
        if comma.is_empty() {
            report.failures.push(format!("comma poset over {ws} is empty"));
            continue;
        }
        let oc = order_complex(comma.len(), |a, b| comma[a].below(&comma[b], ctx), &[]);
        let c = oc.reduced_cochains();
        for n in c.start()..=c.end() {
            let h = c.cohomology(n, Coeff::Z);
            if !h.is_zero() {
                report.failures.push(format!("comma poset over {ws} has H^{n} = {h}"));
            }
        }
    }
    Ok(report)
}
