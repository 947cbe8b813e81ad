use super::Functor;
use crate::error::{Error, Result};
use crate::group::GroupCtx;
use crate::homalg::{AbGroup, CochainComplex, Coeff, IntMatrix, SparseMatrix};
use crate::sections::{orbit_category, CategoryKind, Collection, FinCategory, Section};
use num_bigint::BigInt;
use std::collections::HashMap;

pub const DEFAULT_CHAIN_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug)]
pub struct BarOptions {
    /// Highest cohomological degree that must be computable.
    pub max_degree: usize,
    pub chain_cap: usize,
    /// Prepend `F(G)` in degree −1, mapping by destriction from `(G, 1)`.
    pub augmented: bool,
}

impl BarOptions {
    pub fn new(max_degree: usize) -> Self {
        BarOptions { max_degree, chain_cap: DEFAULT_CHAIN_CAP, augmented: true }
    }
}

/// `F(Mg): F(M/L) → F(U/V)` for a morphism `Mg: (U,V) → (M,L)`.
pub(crate) fn morphism_map(f: &dyn Functor, ctx: &GroupCtx, source: Section, target: Section, g: usize) -> IntMatrix {
    let moved = source.conj(ctx, g);
    f.conj(ctx, ctx.group.inv(g), moved).mul(&f.des(ctx, target, moved))
}

fn push_identity(m: &mut SparseMatrix, r0: usize, c0: usize, n: usize, sign: i32) {
    for i in 0..n {
        m.push(r0 + i, c0 + i, BigInt::from(sign));
    }
}

/// Normalized cochains of the nerve of a category of sections with coefficients in `F`:
/// `Cⁿ = ⊕ F(x₀)` over chains `x₀ → x₁ → ... → xₙ` of non-identity morphisms, with
/// `(δc)(α₁,…,αₙ₊₁) = F(α₁)c(α₂,…) + Σᵢ (−1)ⁱ c(…,αᵢ₊₁αᵢ,…) + (−1)ⁿ⁺¹ c(α₁,…,αₙ)`.
pub fn bar_complex(f: &dyn Functor, ctx: &GroupCtx, cat: &FinCategory, opts: BarOptions) -> Result<CochainComplex> {
    assert_eq!(cat.kind, CategoryKind::Sections, "bar complex is built on categories of sections");
    let objects = &cat.objects;
    let values: Vec<Vec<u64>> = objects.iter().map(|&s| f.value(ctx, s)).collect();
    let nonid: Vec<Vec<usize>> = (0..cat.num_objects()).map(|x| cat.non_identity_from(x)).collect();
    let mut fmap: HashMap<usize, IntMatrix> = HashMap::new();
    for list in &nonid {
        for &a in list {
            let m = cat.morphisms[a];
            fmap.insert(a, morphism_map(f, ctx, objects[m.source], objects[m.target], m.rep));
        }
    }

    // chains[n] lists chains of n non-identity morphisms (n ≥ 1); chains of length 0 are objects
    let top = opts.max_degree + 1;
    let mut chains: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
    chains[1] = nonid.iter().flatten().map(|&a| vec![a as u32]).collect();
    for n in 2..=top {
        let mut next = Vec::new();
        for c in &chains[n - 1] {
            let last = cat.morphisms[*c.last().unwrap() as usize].target;
            for &a in &nonid[last] {
                let mut e = c.clone();
                e.push(a as u32);
                next.push(e);
            }
            if next.len() > opts.chain_cap {
                return Err(Error::BarSizeBound { chains: next.len(), cap: opts.chain_cap });
            }
        }
        chains[n] = next;
    }
    let source_of = |c: &[u32]| cat.morphisms[c[0] as usize].source;

    let mut orders: Vec<Vec<u64>> = Vec::new();
    if opts.augmented {
        let whole = Section::new(ctx.lattice.whole(), ctx.lattice.trivial());
        orders.push(f.value(ctx, whole));
    }
    orders.push(values.concat());
    let mut offsets: Vec<HashMap<Vec<u32>, usize>> = vec![HashMap::new(); top + 1];
    let mut object_offset = vec![0usize; objects.len()];
    let mut acc = 0;
    for x in 0..objects.len() {
        object_offset[x] = acc;
        acc += values[x].len();
    }
    for n in 1..=top {
        let mut o = Vec::new();
        for c in &chains[n] {
            offsets[n].insert(c.clone(), o.len());
            o.extend_from_slice(&values[source_of(c)]);
        }
        orders.push(o);
    }

    let mut diffs = Vec::new();
    let shift = usize::from(opts.augmented);
    if opts.augmented {
        let whole = Section::new(ctx.lattice.whole(), ctx.lattice.trivial());
        let mut d = SparseMatrix::new(orders[1].len(), orders[0].len());
        for (x, &s) in objects.iter().enumerate() {
            d.add_block(object_offset[x], 0, &f.des(ctx, whole, s));
        }
        diffs.push(d);
    }
    for n in 0..top {
        let mut d = SparseMatrix::new(orders[shift + n + 1].len(), orders[shift + n].len());
        for c in &chains[n + 1] {
            let r0 = offsets[n + 1][c];
            let x0 = source_of(c);
            let dim0 = values[x0].len();
            if dim0 == 0 {
                continue;
            }
            let a1 = c[0] as usize;
            let col = if n == 0 { object_offset[cat.morphisms[a1].target] } else { offsets[n][&c[1..]] };
            d.add_block(r0, col, &fmap[&a1]);
            for i in 1..=n {
                let comp = cat.compose(c[i] as usize, c[i - 1] as usize);
                if cat.is_identity(comp) {
                    continue;
                }
                let mut face: Vec<u32> = Vec::with_capacity(n);
                face.extend_from_slice(&c[..i - 1]);
                face.push(comp as u32);
                face.extend_from_slice(&c[i + 1..]);
                push_identity(&mut d, r0, offsets[n][&face], dim0, if i % 2 == 0 { 1 } else { -1 });
            }
            let col = if n == 0 { object_offset[x0] } else { offsets[n][&c[..n]] };
            push_identity(&mut d, r0, col, dim0, if (n + 1) % 2 == 0 { 1 } else { -1 });
        }
        diffs.push(d);
    }
    let start = if opts.augmented { -1 } else { 0 };
    Ok(CochainComplex::with_orders(start, orders, diffs))
}

/// `Hⁿ(D; F)` for `n` up to the options' degree.
pub fn category_cohomology(f: &dyn Functor, ctx: &GroupCtx, cat: &FinCategory, n: usize, coeff: Coeff, chain_cap: usize) -> Result<AbGroup> {
    let opts = BarOptions { max_degree: n, chain_cap, augmented: false };
    Ok(bar_complex(f, ctx, cat, opts)?.cohomology(n as i32, coeff))
}

/// The inverse limit of `F` over the category, as the equalizer of all morphisms.
pub fn limit_over_category(f: &dyn Functor, ctx: &GroupCtx, cat: &FinCategory, coeff: Coeff) -> Result<AbGroup> {
    let opts = BarOptions { max_degree: 0, chain_cap: DEFAULT_CHAIN_CAP, augmented: false };
    let c = bar_complex(f, ctx, cat, opts)?;
    Ok(c.cohomology(0, coeff))
}

/// Reduced cohomology `H̃ⁿ` over the skeleton of the orbit category of the collection, for
/// `n = −1, …, max_degree`. Degrees −1 and 0 are the kernel and cokernel of the map from
/// `F(G)` to the limit.
pub fn reduced_cohomology(
    f: &dyn Functor,
    ctx: &GroupCtx,
    coll: Collection,
    max_degree: usize,
    coeff: Coeff,
    chain_cap: usize,
) -> Result<Vec<(i32, AbGroup)>> {
    let cat = orbit_category(ctx, coll, true)?;
    let opts = BarOptions { max_degree, chain_cap, augmented: true };
    let c = bar_complex(f, ctx, &cat, opts)?;
    Ok((-1..=max_degree as i32).map(|n| (n, c.cohomology(n, coeff))).collect())
}
