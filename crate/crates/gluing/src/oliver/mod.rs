//! Oliver's cochain complex over the Quillen category, built from Steinberg modules.

mod steinberg;

pub use steinberg::{steinberg_action, steinberg_module, transport, truncation_map, SteinbergModule, STEINBERG_RANK_CAP};

use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::group::GroupCtx;
use crate::homalg::{preimage, AbGroup, CochainComplex, Coeff, IntMatrix, Quotient, SparseMatrix};
use crate::sections::Section;
use num_bigint::BigInt;

/// `Hom_{Aut_G(E)}(St_E, M)` as a quotient of a lattice of `dim M × dim St` matrices, stored
/// column-major.
#[derive(Clone, Debug)]
pub struct EquivariantHom {
    pub group: AbGroup,
    pub module_dim: usize,
    pub steinberg_dim: usize,
    quotient: Quotient,
}

impl EquivariantHom {
    /// Canonical generators as `dim M × dim St` matrices.
    pub fn generators(&self) -> Vec<IntMatrix> {
        self.quotient.generators().iter().map(|v| self.unvec(v)).collect()
    }

    pub fn coords(&self, phi: &IntMatrix) -> Vec<BigInt> {
        let mut v = Vec::with_capacity(self.module_dim * self.steinberg_dim);
        for j in 0..self.steinberg_dim {
            v.extend(phi.column(j));
        }
        self.quotient.coords(&v)
    }

    fn unvec(&self, v: &[BigInt]) -> IntMatrix {
        if self.module_dim == 0 {
            return IntMatrix::zeros(0, self.steinberg_dim);
        }
        let cols: Vec<Vec<BigInt>> = v.chunks(self.module_dim).map(<[BigInt]>::to_vec).collect();
        IntMatrix::from_columns(self.module_dim, &cols)
    }
}

/// Fixed points of `Φ ↦ c_n Φ ρ(n)⁻¹` on `Hom(St, M)`, for pairs `(c_n, ρ(n))` over generators.
/// `M` is presented on generators with the given orders.
pub fn equivariant_hom(steinberg_dim: usize, module_orders: &[u64], actions: &[(IntMatrix, IntMatrix)]) -> EquivariantHom {
    let m = module_orders.len();
    let n = m * steinberg_dim;
    let orders: Vec<u64> = (0..steinberg_dim).flat_map(|_| module_orders.iter().copied()).collect();
    let rels = crate::functor::relation_columns(&orders);
    let mut stacked = IntMatrix::zeros(0, n);
    let mut target_orders = Vec::new();
    for (c, rho) in actions {
        // vec(cΦ − Φρ) = (I ⊗ c − ρᵀ ⊗ I) vec(Φ)
        let mut l = IntMatrix::zeros(n, n);
        for j in 0..steinberg_dim {
            for a in 0..m {
                for b in 0..m {
                    *l.get_mut(j * m + a, j * m + b) += c.get(a, b);
                }
            }
            for k in 0..steinberg_dim {
                let r = rho.get(k, j);
                for a in 0..m {
                    *l.get_mut(j * m + a, k * m + a) -= r;
                }
            }
        }
        stacked = stacked.vstack(&l);
        target_orders.extend_from_slice(&orders);
    }
    let lattice = if actions.is_empty() {
        IntMatrix::identity(n)
    } else {
        preimage(&stacked, &crate::functor::relation_columns(&target_orders))
    };
    let quotient = Quotient::new(&lattice, &rels);
    EquivariantHom { group: quotient.group().clone(), module_dim: m, steinberg_dim, quotient }
}

#[derive(Clone, Copy, Debug)]
pub struct OliverOptions {
    pub rank_cap: usize,
}

impl Default for OliverOptions {
    fn default() -> Self {
        OliverOptions { rank_cap: STEINBERG_RANK_CAP }
    }
}

/// One summand `Hom_{Aut_G(E)}(St_E, F(C_G(E)/E))`.
#[derive(Clone, Debug)]
pub struct OliverTerm {
    pub e: usize,
    pub section: Section,
    pub steinberg: SteinbergModule,
    pub hom: EquivariantHom,
}

/// `C^{k−1} = ⊕_{E ∈ ℰ_k} Hom_{Aut_G(E)}(St_E, F(C_G(E)/E))` for `k = 0, …, rk(G)`.
#[derive(Clone, Debug)]
pub struct OliverComplex {
    pub p: usize,
    /// `terms[k]` lists the summands for class representatives of rank `k`.
    pub terms: Vec<Vec<OliverTerm>>,
    pub complex: CochainComplex,
}

impl OliverComplex {
    /// `H̃^n`; degrees at least 2 need p-local coefficients.
    pub fn cohomology(&self, n: i32, coeff: Coeff) -> Result<AbGroup> {
        if n >= 2 && !coeff.is_p_local(self.p as u64) {
            return Err(Error::CoefficientScope { degree: n });
        }
        Ok(self.complex.cohomology(n, coeff))
    }

    pub fn term_groups(&self) -> Vec<AbGroup> {
        self.terms.iter().map(|ts| AbGroup::sum_all(ts.iter().map(|t| &t.hom.group))).collect()
    }
}

fn value_at(f: &dyn Functor, ctx: &GroupCtx, s: Section) -> Result<Vec<u64>> {
    if f.is_defined(ctx, s) {
        Ok(f.value(ctx, s))
    } else {
        Err(Error::CollectionTooSmall(format!("functor has no value at {s}")))
    }
}

pub fn oliver_complex(f: &dyn Functor, ctx: &GroupCtx, opts: OliverOptions) -> Result<OliverComplex> {
    let p = ctx.prime().ok_or(Error::NotPGroup(ctx.order()))?;
    let l = &ctx.lattice;
    let rk = ctx.p_rank(p);
    if rk > opts.rank_cap {
        return Err(Error::RankCap { rank: rk, cap: opts.rank_cap });
    }
    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); rk + 1];
    for e in l.class_reps() {
        if l.is_elementary_abelian(&ctx.group, e, p) {
            reps[l.log_order(e, p)].push(e);
        }
    }
    for r in &mut reps {
        r.sort_unstable();
    }
    let mut terms: Vec<Vec<OliverTerm>> = Vec::new();
    for rank_reps in &reps {
        let mut row = Vec::new();
        for &e in rank_reps {
            let section = Section::new(l.centralizer(e), e);
            let orders = value_at(f, ctx, section)?;
            let steinberg = steinberg_module(ctx, e, opts.rank_cap)?;
            let actions: Vec<(IntMatrix, IntMatrix)> = l
                .generators(l.normalizer(e))
                .iter()
                .map(|&n| (f.conj(ctx, n, section), steinberg_action(ctx, &steinberg, n)))
                .collect();
            let hom = equivariant_hom(steinberg.dim(), &orders, &actions);
            row.push(OliverTerm { e, section, steinberg, hom });
        }
        terms.push(row);
    }

    let mut diffs = Vec::new();
    for k in 0..rk {
        let (src, dst) = (&terms[k], &terms[k + 1]);
        let src_off = offsets(src);
        let dst_off = offsets(dst);
        let mut d = SparseMatrix::new(*dst_off.last().unwrap(), *src_off.last().unwrap());
        for (ti, target) in dst.iter().enumerate() {
            let mut parts: Vec<(usize, IntMatrix, IntMatrix)> = Vec::new();
            for a in l.interval(l.trivial(), target.e).filter(|&a| l.order(a) * p == l.order(target.e)) {
                let a0 = l.class_rep(a);
                let t = l.transporter(a);
                let si = src.iter().position(|s| s.e == a0).expect("representative of rank k");
                let source = &src[si];
                let st_a = steinberg_module(ctx, a, opts.rank_cap)?;
                let sa = Section::new(l.centralizer(a), a);
                let left = f.des(ctx, sa, target.section).mul(&f.conj(ctx, t, source.section));
                let right = transport(ctx, &st_a, &source.steinberg, ctx.group.inv(t))
                    .mul(&truncation_map(ctx, &target.steinberg, &st_a)?);
                parts.push((si, left, right));
            }
            for (si, source) in src.iter().enumerate() {
                for (g, phi) in source.hom.generators().iter().enumerate() {
                    let mut psi = IntMatrix::zeros(target.hom.module_dim, target.hom.steinberg_dim);
                    for (_, left, right) in parts.iter().filter(|x| x.0 == si) {
                        psi = psi.add(&left.mul(phi).mul(right));
                    }
                    for (i, v) in target.hom.coords(&psi).into_iter().enumerate() {
                        d.push(dst_off[ti] + i, src_off[si] + g, v);
                    }
                }
            }
        }
        diffs.push(d);
    }
    let orders: Vec<Vec<u64>> =
        terms.iter().map(|ts| ts.iter().flat_map(|t| t.hom.group.orders()).collect()).collect();
    let complex = CochainComplex::with_orders(-1, orders, diffs);
    complex.check()?;
    Ok(OliverComplex { p, terms, complex })
}

fn offsets(terms: &[OliverTerm]) -> Vec<usize> {
    let mut out = vec![0];
    for t in terms {
        out.push(out.last().unwrap() + t.hom.group.num_generators());
    }
    out
}
