use super::bar::{bar_complex, BarOptions};
use super::{eq_mod, relation_columns, Functor};
use crate::error::{Error, Result};
use crate::group::GroupCtx;
use crate::homalg::{preimage, rank, AbGroup, AbMap, CochainComplex, Coeff, IntMatrix, Quotient, SparseMatrix};
use crate::sections::{orbit_category, Collection, Section};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

/// Coordinates of gluing data: one block `F(N_G(H)/H)` per class representative `H ≠ 1`.
struct Layout {
    reps: Vec<usize>,
    sections: Vec<Section>,
    offsets: Vec<usize>,
    orders: Vec<u64>,
}

impl Layout {
    fn new(f: &dyn Functor, ctx: &GroupCtx) -> Result<Self> {
        let l = &ctx.lattice;
        let mut reps: Vec<usize> = l.class_reps().filter(|&h| h != l.trivial()).collect();
        reps.sort_unstable();
        let sections: Vec<Section> = reps.iter().map(|&h| Section::new(l.normalizer(h), h)).collect();
        let mut offsets = Vec::with_capacity(reps.len() + 1);
        let mut orders = Vec::new();
        for s in &sections {
            if !f.is_defined(ctx, *s) {
                return Err(Error::CollectionTooSmall(format!("functor has no value at {s}")));
            }
            offsets.push(orders.len());
            orders.extend(f.value(ctx, *s));
        }
        offsets.push(orders.len());
        Ok(Layout { reps, sections, offsets, orders })
    }

    fn block(&self, h: usize) -> usize {
        self.reps.binary_search(&h).expect("class representative")
    }
}

fn defined(f: &dyn Functor, ctx: &GroupCtx, s: Section) -> Result<()> {
    if f.is_defined(ctx, s) {
        Ok(())
    } else {
        Err(Error::CollectionTooSmall(format!("functor has no value at {s}")))
    }
}

/// Constraints cutting the gluing data out of the product of the blocks: invariance of `x_H`
/// under `N_G(H)`, and agreement of `x_K` and `x_H` on `(N_G(H) ∩ N_G(K), H)` whenever
/// `1 < K ⊴ H`.
fn constraints(f: &dyn Functor, ctx: &GroupCtx, lay: &Layout) -> Result<(SparseMatrix, Vec<u64>)> {
    let l = &ctx.lattice;
    let mut blocks: Vec<Vec<(usize, IntMatrix)>> = Vec::new();
    let mut row_orders = Vec::new();
    for (b, &h) in lay.reps.iter().enumerate() {
        let sh = lay.sections[b];
        let dim = lay.offsets[b + 1] - lay.offsets[b];
        for &n in l.generators(sh.u) {
            let m = f.conj(ctx, n, sh).sub(&IntMatrix::identity(dim));
            if !m.is_zero() {
                blocks.push(vec![(b, m)]);
                row_orders.extend_from_slice(&lay.orders[lay.offsets[b]..lay.offsets[b + 1]]);
            }
        }
        for k in l.interval(l.trivial(), h) {
            if k == l.trivial() || k == h || !l.is_normal_in(k, h) {
                continue;
            }
            let target = Section::new(l.intersection(sh.u, l.normalizer(k)), h);
            defined(f, ctx, target)?;
            let k0 = l.class_rep(k);
            let bk = lay.block(k0);
            let sk = Section::new(l.normalizer(k), k);
            defined(f, ctx, sk)?;
            let from_k = f.des(ctx, sk, target).mul(&f.conj(ctx, l.transporter(k), lay.sections[bk]));
            let from_h = f.des(ctx, sh, target).scale(&BigInt::from(-1));
            row_orders.extend(f.value(ctx, target));
            blocks.push(vec![(bk, from_k), (b, from_h)]);
        }
    }
    let mut m = SparseMatrix::new(row_orders.len(), lay.orders.len());
    let mut r0 = 0;
    for row in blocks {
        let height = row[0].1.rows();
        for (b, mat) in row {
            m.add_block(r0, lay.offsets[b], &mat);
        }
        r0 += height;
    }
    Ok((m, row_orders))
}

fn detection_matrix(f: &dyn Functor, ctx: &GroupCtx, lay: &Layout) -> Result<(SparseMatrix, Vec<u64>)> {
    let whole = Section::new(ctx.lattice.whole(), ctx.lattice.trivial());
    defined(f, ctx, whole)?;
    let fg = f.value(ctx, whole);
    let mut m = SparseMatrix::new(lay.orders.len(), fg.len());
    for (b, &s) in lay.sections.iter().enumerate() {
        m.add_block(lay.offsets[b], 0, &f.des(ctx, whole, s));
    }
    Ok((m, fg))
}

/// The complex `F(G) → ⊕_H F(N_G(H)/H) → constraints` whose cohomology in degrees −1 and 0 is
/// the kernel and cokernel of the detection map into the gluing limit. Without augmentation,
/// degree 0 is the limit itself.
pub fn direct_complex(f: &dyn Functor, ctx: &GroupCtx, augmented: bool) -> Result<CochainComplex> {
    let lay = Layout::new(f, ctx)?;
    let (a, row_orders) = constraints(f, ctx, &lay)?;
    if augmented {
        let (d, fg) = detection_matrix(f, ctx, &lay)?;
        Ok(CochainComplex::with_orders(-1, vec![fg, lay.orders, row_orders], vec![d, a]))
    } else {
        Ok(CochainComplex::with_orders(0, vec![lay.orders, row_orders], vec![a]))
    }
}

/// `(Ker, Coker)` of the detection map `F(G) → L(G)`, computed directly from the gluing data.
pub fn obs_direct(f: &dyn Functor, ctx: &GroupCtx, coeff: Coeff) -> Result<(AbGroup, AbGroup)> {
    let c = direct_complex(f, ctx, true)?;
    Ok((c.cohomology(-1, coeff), c.cohomology(0, coeff)))
}

/// The gluing limit with explicit generators.
#[derive(Clone, Debug)]
pub struct GluingLimit {
    pub group: AbGroup,
    /// Class representatives `H ≠ 1`, in id order, each with its block `(N_G(H), H)`.
    pub reps: Vec<usize>,
    pub sections: Vec<Section>,
    offsets: Vec<usize>,
    /// Canonical generators as vectors over all blocks.
    pub generators: Vec<Vec<BigInt>>,
}

impl GluingLimit {
    /// The `H`-component of a vector over all blocks.
    pub fn component<'a>(&self, v: &'a [BigInt], h: usize) -> &'a [BigInt] {
        let b = self.reps.binary_search(&h).expect("class representative");
        &v[self.offsets[b]..self.offsets[b + 1]]
    }
}

fn integral(coeff: Coeff) -> Coeff {
    if coeff == Coeff::Q {
        Coeff::Z
    } else {
        coeff
    }
}

fn rationalize(g: AbGroup, coeff: Coeff) -> AbGroup {
    if coeff == Coeff::Q {
        AbGroup::free(g.free_rank)
    } else {
        g
    }
}

/// Explicit limit. Over ℚ the group is the rationalization and the generators are integral.
pub fn gluing_limit(f: &dyn Functor, ctx: &GroupCtx, coeff: Coeff) -> Result<GluingLimit> {
    let lay = Layout::new(f, ctx)?;
    let c = direct_complex(f, ctx, false)?;
    let q = c.cohomology_quotient(0, integral(coeff));
    Ok(GluingLimit {
        group: rationalize(q.group().clone(), coeff),
        reps: lay.reps,
        sections: lay.sections,
        offsets: lay.offsets,
        generators: q.generators(),
    })
}

fn tensored(orders: &[u64], coeff: Coeff) -> Vec<u64> {
    match coeff {
        Coeff::Zmod(m) => orders.iter().map(|&o| if o == 0 { m } else { o.gcd(&m) }).collect(),
        _ => orders.to_vec(),
    }
}

fn presentation(orders: &[u64], coeff: Coeff) -> Quotient {
    Quotient::new(&IntMatrix::identity(orders.len()), &relation_columns(&tensored(orders, coeff)))
}

/// `F(G) → L(G)` between canonical presentations. Over ℚ the integral map is returned.
pub fn detection_map(f: &dyn Functor, ctx: &GroupCtx, coeff: Coeff) -> Result<AbMap> {
    let coeff = integral(coeff);
    let lay = Layout::new(f, ctx)?;
    let (d, fg) = detection_matrix(f, ctx, &lay)?;
    let lim = direct_complex(f, ctx, false)?.cohomology_quotient(0, coeff);
    let src = presentation(&fg, coeff);
    let dense = d.to_dense();
    let cols: Vec<Vec<BigInt>> = src.generators().iter().map(|g| lim.coords(&dense.mul_vec(g))).collect();
    let matrix = IntMatrix::from_columns(lim.group().num_generators(), &cols);
    Ok(AbMap::new(src.group().clone(), lim.group().clone(), matrix))
}

/// Faithful part `∂F(U/V)`: the common kernel of the deflations to `U/N` over minimal normal
/// subgroups `N/V` of `U/V`. Every nontrivial normal subgroup contains a minimal one, so these
/// deflations cut out the same kernel as all of them.
pub fn faithful_part(f: &dyn Functor, ctx: &GroupCtx, s: Section, coeff: Coeff) -> Result<AbGroup> {
    let l = &ctx.lattice;
    defined(f, ctx, s)?;
    let normal: Vec<usize> = l.interval(s.v, s.u).filter(|&n| n != s.v && l.is_normal_in(n, s.u)).collect();
    let minimal = normal.iter().copied().filter(|&n| !normal.iter().any(|&m| m != n && l.leq(m, n)));
    let c = integral(coeff);
    let source = f.value(ctx, s);
    let mut stacked = IntMatrix::zeros(0, source.len());
    let mut target = Vec::new();
    for n in minimal {
        let t = Section::new(s.u, n);
        defined(f, ctx, t)?;
        stacked = stacked.vstack(&f.des(ctx, s, t));
        target.extend(f.value(ctx, t));
    }
    let pre = preimage(&stacked, &relation_columns(&tensored(&target, c)));
    let group = Quotient::new(&pre, &relation_columns(&tensored(&source, c))).group().clone();
    Ok(rationalize(group, coeff))
}

/// Outcome of comparing the gluing limit with the limit over the orbit category of proper sections.
#[derive(Clone, Debug, Serialize)]
pub struct LimitIsoReport {
    pub gluing_limit: AbGroup,
    pub category_limit: AbGroup,
    /// The family extended from gluing data is compatible with every morphism.
    pub maps_into_limit: bool,
    /// Restricting the extended family to the blocks gives back the gluing data.
    pub left_inverse: bool,
}

impl LimitIsoReport {
    pub fn passed(&self) -> bool {
        self.maps_into_limit && self.left_inverse && self.gluing_limit == self.category_limit
    }
}

fn vstack_sparse(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut m = SparseMatrix::new(a.rows() + b.rows(), a.cols());
    for i in 0..a.rows() {
        for (j, v) in a.row_entries(i) {
            m.push(i, *j, v.clone());
        }
    }
    for i in 0..b.rows() {
        for (j, v) in b.row_entries(i) {
            m.push(a.rows() + i, *j, v.clone());
        }
    }
    m
}

/// Extends gluing data `(x_H)` to the family `x_{(U,V)} = Des^{N(V)/V}_{U/V} x_V` on the skeleton of
/// the orbit category of proper sections, and checks that this is an isomorphism onto the limit.
pub fn check_limit_iso(f: &dyn Functor, ctx: &GroupCtx, chain_cap: usize) -> Result<LimitIsoReport> {
    let l = &ctx.lattice;
    let lay = Layout::new(f, ctx)?;
    let (a, row_orders) = constraints(f, ctx, &lay)?;
    let cat = orbit_category(ctx, Collection::Proper, true)?;
    let bar = bar_complex(f, ctx, &cat, BarOptions { max_degree: 0, chain_cap, augmented: false })?;
    let c0_orders = bar.term_orders(0).to_vec();
    let mut obj_offset = Vec::with_capacity(cat.num_objects());
    let mut acc = 0;
    for &s in &cat.objects {
        obj_offset.push(acc);
        acc += f.value(ctx, s).len();
    }

    let mut psi = SparseMatrix::new(c0_orders.len(), lay.orders.len());
    for (x, &s) in cat.objects.iter().enumerate() {
        let v0 = l.class_rep(s.v);
        let b = lay.block(v0);
        let nv = Section::new(l.normalizer(s.v), s.v);
        let m = f.des(ctx, nv, s).mul(&f.conj(ctx, l.transporter(s.v), lay.sections[b]));
        psi.add_block(obj_offset[x], lay.offsets[b], &m);
    }
    let mut pi = SparseMatrix::new(lay.orders.len(), c0_orders.len());
    for (b, &sh) in lay.sections.iter().enumerate() {
        let (r, t) = sh.class_rep(ctx);
        let x = cat.object_index(&r).ok_or_else(|| Error::CollectionTooSmall(format!("{r} is not a proper section")))?;
        pi.add_block(lay.offsets[b], obj_offset[x], &f.conj(ctx, t, r));
    }
    let left_inverse = eq_mod(&pi.mul(&psi).to_dense(), &IntMatrix::identity(lay.orders.len()), &lay.orders);

    let d0 = bar.differential(0).expect("bar complex has a differential in degree 0");
    let image = d0.mul(&psi);
    let torsion = lay.orders.iter().chain(&row_orders).chain(&c0_orders).any(|&o| o != 0);
    let maps_into_limit = if torsion {
        let direct = CochainComplex::with_orders(0, vec![lay.orders.clone(), row_orders], vec![a]);
        let (_, gens) = direct.cohomology_generators(0, Coeff::Z);
        let dense = image.to_dense();
        let c1 = bar.term_orders(1);
        gens.iter().all(|g| {
            let v = dense.mul_vec(g);
            let col = IntMatrix::from_columns(v.len(), &[v]);
            eq_mod(&col, &IntMatrix::zeros(col.rows(), 1), c1)
        })
    } else {
        rank(&vstack_sparse(&a, &image)) == rank(&a)
    };
    let gluing = direct_complex(f, ctx, false)?.cohomology(0, Coeff::Z);
    let category = bar.cohomology(0, Coeff::Z);
    Ok(LimitIsoReport { gluing_limit: gluing, category_limit: category, maps_into_limit, left_inverse })
}
