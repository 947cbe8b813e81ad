//! Sections of a group, the collections used for reductions, and the categories built on them.

mod ageq2;
mod category;
mod complex;

pub use ageq2::{a_geq2, components_a_geq2, AGeq2, Components};
pub use category::{check_opposite_iso, orbit_category, quillen_category, CategoryKind, FinCategory, IsoReport, Morphism};
pub use complex::{
    check_reduction_hypothesis, h1_invariant_cocycles, order_complex, orbit_cochain_complex, OrderComplex, ReductionReport,
};

use crate::error::{Error, Result};
use crate::group::GroupCtx;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

/// A pair `(U, V)` of subgroup ids with `V ⊴ U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Section {
    pub u: usize,
    pub v: usize,
}

impl Section {
    pub fn new(u: usize, v: usize) -> Self {
        Section { u, v }
    }

    pub fn is_valid(&self, ctx: &GroupCtx) -> bool {
        ctx.lattice.is_normal_in(self.v, self.u)
    }

    /// `(U, V) ⪯ (M, L)` iff `L ≤ V ≤ U ≤ M`.
    pub fn below(&self, other: &Section, ctx: &GroupCtx) -> bool {
        let l = &ctx.lattice;
        l.leq(other.v, self.v) && l.leq(self.u, other.u)
    }

    /// `^g (U, V)`.
    pub fn conj(&self, ctx: &GroupCtx, g: usize) -> Section {
        Section { u: ctx.lattice.conj(self.u, g), v: ctx.lattice.conj(self.v, g) }
    }

    /// Order of the subquotient `U/V`.
    pub fn quotient_order(&self, ctx: &GroupCtx) -> usize {
        ctx.lattice.order(self.u) / ctx.lattice.order(self.v)
    }

    /// Conjugacy-class representative: least `(u, v)` over the orbit, with a transporter `t` such
    /// that `^t rep = self`.
    pub fn class_rep(&self, ctx: &GroupCtx) -> (Section, usize) {
        let mut best = (*self, 0);
        for g in 0..ctx.order() {
            let s = self.conj(ctx, g);
            if s < best.0 {
                best = (s, ctx.group.inv(g));
            }
        }
        best
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U={}/V={}", self.u, self.v)
    }
}

impl FromStr for Section {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("cannot parse section `{s}` (expected U=<id>/V=<id>)"));
        let (a, b) = s.trim().split_once('/').ok_or_else(bad)?;
        let u = a.trim().strip_prefix("U=").and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        let v = b.trim().strip_prefix("V=").and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        Ok(Section { u, v })
    }
}

/// Families of sections closed under conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Collection {
    All,
    /// `V ≠ 1`.
    Proper,
    /// `(P, Q)` with `P` a p-group and `Q ≠ 1`.
    P(usize),
    /// `(U, E)` with `E ≠ 1` elementary abelian and `U ≤ C_G(E)` a p-group.
    E(usize),
    /// `(C_G(E), E)` with `E ≠ 1` elementary abelian.
    C(usize),
    /// Sections `(N, L)` with `N` the normalizer of a subnormal series `1 < L_0 ⊴ ... ⊴ L`.
    Subnormal,
}

impl Collection {
    /// Parses a CLI token; `e`, `c` and `p` default to the given prime.
    pub fn parse(token: &str, default_prime: Option<usize>) -> Result<Self> {
        let bad = || Error::Input(format!("unknown collection `{token}`"));
        let (name, arg) = match token.split_once('=') {
            Some((n, a)) => (n, Some(a.parse::<usize>().map_err(|_| bad())?)),
            None => (token, None),
        };
        let prime = || arg.or(default_prime).ok_or_else(|| Error::Input(format!("collection `{token}` needs a prime")));
        Ok(match name {
            "all" => Collection::All,
            "proper" => Collection::Proper,
            "subnormal" => Collection::Subnormal,
            "p" => Collection::P(prime()?),
            "e" => Collection::E(prime()?),
            "c" => Collection::C(prime()?),
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Collection::All => write!(f, "all"),
            Collection::Proper => write!(f, "proper"),
            Collection::P(p) => write!(f, "p={p}"),
            Collection::E(p) => write!(f, "e={p}"),
            Collection::C(p) => write!(f, "c={p}"),
            Collection::Subnormal => write!(f, "subnormal"),
        }
    }
}

/// Sections of a collection, sorted by `(U, V)`, with the order relation and conjugation action.
#[derive(Clone, Debug)]
pub struct SectionPoset {
    pub collection: Collection,
    pub elements: Vec<Section>,
    index: HashMap<Section, usize>,
}

impl SectionPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, s: &Section) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Section) -> bool {
        self.index.contains_key(s)
    }

    pub fn leq(&self, ctx: &GroupCtx, a: usize, b: usize) -> bool {
        self.elements[a].below(&self.elements[b], ctx)
    }

    /// Permutation of the elements induced by conjugation with `g`.
    pub fn action(&self, ctx: &GroupCtx, g: usize) -> Vec<usize> {
        self.elements.iter().map(|s| self.index[&s.conj(ctx, g)]).collect()
    }

    /// One action permutation per generator of the group.
    pub fn generator_action(&self, ctx: &GroupCtx) -> Vec<Vec<usize>> {
        ctx.group.generators().iter().map(|&g| self.action(ctx, g)).collect()
    }

    /// Representatives (least index) of the conjugacy classes.
    pub fn class_reps(&self, ctx: &GroupCtx) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..ctx.order()).all(|g| self.index[&self.elements[i].conj(ctx, g)] >= i)).collect()
    }

    /// Pairs `(a, b)` with `a ⋖ b`: `a ⪯ b` and nothing in the poset strictly between.
    pub fn covers(&self, ctx: &GroupCtx) -> Vec<(usize, usize)> {
        let n = self.len();
        let below: Vec<Vec<usize>> =
            (0..n).map(|b| (0..n).filter(|&a| a != b && self.leq(ctx, a, b)).collect()).collect();
        let mut out = Vec::new();
        for b in 0..n {
            for &a in &below[b] {
                if !below[b].iter().any(|&c| c != a && self.leq(ctx, a, c)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_conjugation_closed(&self, ctx: &GroupCtx) -> bool {
        self.elements.iter().all(|s| (0..ctx.order()).all(|g| self.index.contains_key(&s.conj(ctx, g))))
    }
}

fn normalizers_of_subnormal_series(ctx: &GroupCtx) -> Vec<BTreeSet<usize>> {
    let l = &ctx.lattice;
    let mut s: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); l.len()];
    for big in 1..l.len() {
        let nl = l.normalizer(big);
        let mut set = BTreeSet::from([nl]);
        for small in 1..big {
            if l.order(small) < l.order(big) && l.is_normal_in(small, big) {
                for &n in &s[small] {
                    set.insert(l.intersection(n, nl));
                }
            }
        }
        s[big] = set;
    }
    s
}

pub fn in_collection(ctx: &GroupCtx, coll: Collection, s: &Section) -> bool {
    let l = &ctx.lattice;
    let g = &ctx.group;
    if !s.is_valid(ctx) {
        return false;
    }
    match coll {
        Collection::All => true,
        Collection::Proper => s.v != 0,
        Collection::P(p) => s.v != 0 && ctx.is_p_subgroup(s.u, p),
        Collection::E(p) => {
            s.v != 0 && ctx.is_p_subgroup(s.u, p) && l.is_elementary_abelian(g, s.v, p) && l.leq(s.u, l.centralizer(s.v))
        }
        Collection::C(p) => s.v != 0 && l.is_elementary_abelian(g, s.v, p) && ctx.is_p_subgroup(s.v, p) && s.u == l.centralizer(s.v),
        Collection::Subnormal => s.v != 0 && normalizers_of_subnormal_series(ctx)[s.v].contains(&s.u),
    }
}

/// All sections of the collection.
pub fn sections(ctx: &GroupCtx, coll: Collection) -> Result<SectionPoset> {
    let l = &ctx.lattice;
    let mut elements = Vec::new();
    match coll {
        Collection::Subnormal => {
            let s = normalizers_of_subnormal_series(ctx);
            for (v, set) in s.iter().enumerate().skip(1) {
                for &u in set.iter().filter(|&&u| l.leq(v, u)) {
                    elements.push(Section::new(u, v));
                }
            }
        }
        Collection::C(p) => {
            for e in l.elementary_abelian(&ctx.group, p, false) {
                elements.push(Section::new(l.centralizer(e), e));
            }
        }
        _ => {
            for u in 0..l.len() {
                for v in 0..l.len() {
                    let s = Section::new(u, v);
                    if l.leq(v, u) && in_collection(ctx, coll, &s) {
                        elements.push(s);
                    }
                }
            }
        }
    }
    elements.sort();
    let index = elements.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    Ok(SectionPoset { collection: coll, elements, index })
}
