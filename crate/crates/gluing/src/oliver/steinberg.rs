use crate::error::{Error, Result};
use crate::group::GroupCtx;
use crate::homalg::{kernel, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

pub const STEINBERG_RANK_CAP: usize = 3;

/// Top reduced homology of the poset of nontrivial proper subgroups of an elementary abelian
/// `E` of rank `r`, as cycles on full flags `V₁ < … < V_{r−1}`. Ranks 0 and 1 give ℤ on the
/// empty flag.
#[derive(Clone, Debug)]
pub struct SteinbergModule {
    pub e: usize,
    pub rank: usize,
    pub p: usize,
    pub flags: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// Columns are a ℤ-basis of the cycles, in flag coordinates.
    pub basis: IntMatrix,
    left_inverse: IntMatrix,
}

fn extend_flags(ctx: &GroupCtx, p: usize, e: usize, top_rank: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let l = &ctx.lattice;
    if prefix.len() == top_rank {
        out.push(prefix.clone());
        return;
    }
    let lo = prefix.last().copied().unwrap_or(l.trivial());
    let want = l.order(lo) * p;
    for v in l.interval(lo, e).filter(|&v| l.order(v) == want) {
        prefix.push(v);
        extend_flags(ctx, p, e, top_rank, prefix, out);
        prefix.pop();
    }
}

impl SteinbergModule {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of a cycle (in flag coordinates) on the stored basis.
    pub fn coords(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let y = self.left_inverse.mul_vec(cycle);
        debug_assert_eq!(self.basis.mul_vec(&y), cycle, "not a cycle");
        y
    }

    fn flag_vector(&self, column: usize, map: impl Fn(&[usize]) -> Option<Vec<usize>>, target: &SteinbergModule) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); target.flags.len()];
        for (i, flag) in self.flags.iter().enumerate() {
            let c = self.basis.get(i, column);
            if c.is_zero() {
                continue;
            }
            if let Some(image) = map(flag) {
                out[target.index[&image]] += c;
            }
        }
        out
    }
}

/// Builds `St_E`; `E` must be elementary abelian of rank at most `rank_cap`.
pub fn steinberg_module(ctx: &GroupCtx, e: usize, rank_cap: usize) -> Result<SteinbergModule> {
    let l = &ctx.lattice;
    let p = if e == l.trivial() {
        ctx.prime().unwrap_or(2)
    } else {
        (2..=l.order(e)).find(|d| l.order(e).is_multiple_of(*d)).expect("nontrivial order has a prime divisor")
    };
    if !l.is_elementary_abelian(&ctx.group, e, p) {
        return Err(Error::Input(format!("subgroup {e} is not elementary abelian")));
    }
    let rank = l.log_order(e, p);
    if rank > rank_cap {
        return Err(Error::RankCap { rank, cap: rank_cap });
    }
    let mut flags = Vec::new();
    extend_flags(ctx, p, e, rank.saturating_sub(1), &mut Vec::new(), &mut flags);
    let index: HashMap<Vec<usize>, usize> = flags.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let (basis, left_inverse) = if rank <= 1 {
        (IntMatrix::identity(1), IntMatrix::identity(1))
    } else {
        let mut faces: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut entries = Vec::new();
        for (j, f) in flags.iter().enumerate() {
            for i in 0..f.len() {
                let mut face = f.clone();
                face.remove(i);
                let n = faces.len();
                let row = *faces.entry(face).or_insert(n);
                entries.push((row, j, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        let mut d = IntMatrix::zeros(faces.len(), flags.len());
        for (r, c, s) in entries {
            *d.get_mut(r, c) += BigInt::from(s);
        }
        let k = kernel(&d);
        (k.basis, k.left_inverse)
    };
    Ok(SteinbergModule { e, rank, p, flags, index, basis, left_inverse })
}

/// `St_A → St_{^gA}` induced by conjugating flags.
pub fn transport(ctx: &GroupCtx, from: &SteinbergModule, to: &SteinbergModule, g: usize) -> IntMatrix {
    assert_eq!(ctx.lattice.conj(from.e, g), to.e, "conjugation must carry the source to the target");
    let cols: Vec<Vec<BigInt>> = (0..from.dim())
        .map(|j| {
            let v = from.flag_vector(j, |f| Some(f.iter().map(|&x| ctx.lattice.conj(x, g)).collect()), to);
            to.coords(&v)
        })
        .collect();
    IntMatrix::from_columns(to.dim(), &cols)
}

/// Action of an element normalizing `E` on `St_E`.
pub fn steinberg_action(ctx: &GroupCtx, st: &SteinbergModule, g: usize) -> IntMatrix {
    transport(ctx, st, st, g)
}

/// `R_E^A: St_E → St_A` for `A` of index `p` in `E`: a flag ending in `A` loses its top, every
/// other flag goes to zero.
pub fn truncation_map(ctx: &GroupCtx, st_e: &SteinbergModule, st_a: &SteinbergModule) -> Result<IntMatrix> {
    let l = &ctx.lattice;
    if !l.leq(st_a.e, st_e.e) || l.order(st_e.e) != l.order(st_a.e) * st_e.p {
        return Err(Error::NotIndexP);
    }
    let a = st_a.e;
    let top = |f: &[usize]| -> Option<Vec<usize>> {
        match f.last() {
            Some(&v) if v == a => Some(f[..f.len() - 1].to_vec()),
            Some(_) => None,
            // rank one: the empty flag of E truncates to the empty flag of the trivial group
            None => Some(Vec::new()),
        }
    };
    let cols: Vec<Vec<BigInt>> = (0..st_e.dim()).map(|j| st_a.coords(&st_e.flag_vector(j, top, st_a))).collect();
    Ok(IntMatrix::from_columns(st_a.dim(), &cols))
}
