use super::Functor;
use crate::error::{Error, Result};
use crate::group::GroupCtx;
use crate::homalg::{CochainComplex, Coeff, IntMatrix, SparseMatrix};
use crate::sections::Section;
use num_bigint::BigInt;
use serde::Serialize;

/// Exactness of `0 → F(G) → middle → right → 0` for one normal subgroup `K ≅ C_p × C_p`.
#[derive(Clone, Debug, Serialize)]
pub struct HtwReport {
    /// Subgroup id of `K`.
    pub k: usize,
    pub central: bool,
    pub composite_zero: bool,
    pub alpha_injective: bool,
    pub middle_exact: bool,
    pub beta_surjective: bool,
}

impl HtwReport {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.alpha_injective && self.middle_exact && self.beta_surjective
    }
}

struct Blocks {
    rows: Vec<Vec<u64>>,
    cols: Vec<Vec<u64>>,
    entries: Vec<(usize, usize, IntMatrix)>,
}

impl Blocks {
    fn to_sparse(&self) -> SparseMatrix {
        let offs = |v: &[Vec<u64>]| {
            v.iter()
                .scan(0, |acc, x| {
                    let o = *acc;
                    *acc += x.len();
                    Some(o)
                })
                .collect::<Vec<_>>()
        };
        let (ro, co) = (offs(&self.rows), offs(&self.cols));
        let mut m = SparseMatrix::new(self.rows.concat().len(), self.cols.concat().len());
        for (i, j, b) in &self.entries {
            m.add_block(ro[*i], co[*j], b);
        }
        m
    }
}

fn check(f: &dyn Functor, ctx: &GroupCtx, k: usize, p: usize) -> Result<HtwReport> {
    let l = &ctx.lattice;
    let (g, one) = (l.whole(), l.trivial());
    let whole = Section::new(g, one);
    let cyclic: Vec<usize> = l.interval(one, k).filter(|&c| l.order(c) == p).collect();
    let z = l.id_of(&ctx.group.center()).expect("center is a subgroup");
    let central = l.leq(k, z);
    let value = |s: Section| -> Result<Vec<u64>> {
        if f.is_defined(ctx, s) {
            Ok(f.value(ctx, s))
        } else {
            Err(Error::CollectionTooSmall(format!("functor has no value at {s}")))
        }
    };
    let fg = value(whole)?;
    let (mid, right, alpha, beta) = if central {
        // C_0 is the first cyclic subgroup; β sends F(G/C_i) to the i-th copy of F(G/K)
        let quots: Vec<Section> = cyclic.iter().map(|&c| Section::new(g, c)).collect();
        let gk = Section::new(g, k);
        let mid: Vec<Vec<u64>> = quots.iter().map(|&s| value(s)).collect::<Result<_>>()?;
        let right: Vec<Vec<u64>> = vec![value(gk)?; p];
        let alpha = Blocks {
            rows: mid.clone(),
            cols: vec![fg.clone()],
            entries: quots.iter().enumerate().map(|(i, &s)| (i, 0, f.des(ctx, whole, s))).collect(),
        };
        let mut entries = Vec::new();
        for (i, &s) in quots.iter().enumerate() {
            let d = f.des(ctx, s, gk);
            if i == 0 {
                for r in 0..p {
                    entries.push((r, 0, d.scale(&BigInt::from(-1))));
                }
            } else {
                entries.push((i - 1, i, d));
            }
        }
        let beta = Blocks { rows: right.clone(), cols: mid.clone(), entries };
        (mid, right, alpha, beta)
    } else {
        let c0 = *cyclic.iter().find(|&&c| l.leq(c, z)).ok_or_else(|| Error::Input("K meets the center trivially".into()))?;
        let c1 = *cyclic.iter().find(|&&c| c != c0).expect("K has p + 1 cyclic subgroups");
        let g0 = l.centralizer(k);
        let (s0, s1, sk) = (Section::new(g, c0), Section::new(g0, c1), Section::new(g0, k));
        let mid = vec![value(s0)?, value(s1)?];
        let right = vec![value(sk)?];
        let alpha = Blocks {
            rows: mid.clone(),
            cols: vec![fg.clone()],
            entries: vec![(0, 0, f.des(ctx, whole, s0)), (1, 0, f.des(ctx, whole, s1))],
        };
        let beta = Blocks {
            rows: right.clone(),
            cols: mid.clone(),
            entries: vec![(0, 0, f.des(ctx, s0, sk).scale(&BigInt::from(-1))), (0, 1, f.des(ctx, s1, sk))],
        };
        (mid, right, alpha, beta)
    };
    let c = CochainComplex::with_orders(-1, vec![fg, mid.concat(), right.concat()], vec![alpha.to_sparse(), beta.to_sparse()]);
    Ok(HtwReport {
        k,
        central,
        composite_zero: c.check().is_ok(),
        alpha_injective: c.cohomology_dense(-1, Coeff::Z).is_zero(),
        middle_exact: c.cohomology_dense(0, Coeff::Z).is_zero(),
        beta_surjective: c.cohomology_dense(1, Coeff::Z).is_zero(),
    })
}

/// Checks the two split exact sequences built from deflations and restrictions, for every
/// normal subgroup `K ≅ C_p × C_p` of a p-group. The outcome is data, not an assertion: the
/// sequences are exact for rhetorical functors and may fail otherwise.
pub fn check_htw_sequences(f: &dyn Functor, ctx: &GroupCtx) -> Result<Vec<HtwReport>> {
    let p = ctx.prime().ok_or(Error::NotPGroup(ctx.order()))?;
    let l = &ctx.lattice;
    let ks: Vec<usize> = (1..l.len())
        .filter(|&k| l.order(k) == p * p && l.is_normal(k) && l.is_elementary_abelian(&ctx.group, k, p))
        .collect();
    ks.into_iter().map(|k| check(f, ctx, k, p)).collect()
}
