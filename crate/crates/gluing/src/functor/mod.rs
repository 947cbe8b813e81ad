//! Destriction functors as data, the gluing problem, and cohomology of orbit categories of sections.

mod bar;
mod builtin;
mod gluing;
mod htw;
mod table;

pub use bar::{bar_complex, category_cohomology, limit_over_category, reduced_cohomology, BarOptions, DEFAULT_CHAIN_CAP};
pub use builtin::{default_atomic_section, Atomic, BurnsideDual, Constant};
pub use gluing::{check_limit_iso, detection_map, direct_complex, faithful_part, gluing_limit, obs_direct, GluingLimit, LimitIsoReport};
pub use htw::{check_htw_sequences, HtwReport};
pub use table::{load_functor, save_functor, FunctorFile, MapEntry, TableFunctor};

use crate::error::{Error, Result};
use crate::group::GroupCtx;
use crate::homalg::{AbGroup, IntMatrix};
use crate::sections::{sections, Collection, Section};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

/// A module over the destriction algebra of a fixed group.
///
/// Values are presented as ℤ-modules on generators with the given orders (0 for a free
/// generator). Maps are integer matrices acting on generator coordinates.
pub trait Functor: Send + Sync {
    fn name(&self) -> String;

    /// Orders of the generators of `F(U/V)`.
    fn value(&self, ctx: &GroupCtx, s: Section) -> Vec<u64>;

    /// `Des^{M/L}_{U/V}: F(M/L) → F(U/V)` for `to ⪯ from`.
    fn des(&self, ctx: &GroupCtx, from: Section, to: Section) -> IntMatrix;

    /// `c_g: F(U/V) → F(^gU/^gV)`.
    fn conj(&self, ctx: &GroupCtx, g: usize, s: Section) -> IntMatrix;

    /// Whether the functor has data at this section.
    fn is_defined(&self, _ctx: &GroupCtx, _s: Section) -> bool {
        true
    }
}

/// Relation columns for generators with the given orders.
pub(crate) fn relation_columns(orders: &[u64]) -> IntMatrix {
    let idx: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] != 0).collect();
    let mut m = IntMatrix::zeros(orders.len(), idx.len());
    for (k, &i) in idx.iter().enumerate() {
        m.set(i, k, BigInt::from(orders[i]));
    }
    m
}

/// Entrywise equality of two maps into a module with the given generator orders.
pub(crate) fn eq_mod(a: &IntMatrix, b: &IntMatrix, target: &[u64]) -> bool {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return false;
    }
    (0..a.rows()).all(|i| {
        (0..a.cols()).all(|j| {
            let d = a.get(i, j) - b.get(i, j);
            if target[i] == 0 {
                d.is_zero()
            } else {
                d.is_multiple_of(&BigInt::from(target[i]))
            }
        })
    })
}

/// Outcome of checking the defining relations on a collection.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub functor: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that inner conjugations act trivially, that destrictions and conjugations compose
/// along every pair of covers and every pair of generators, and that destrictions commute with
/// conjugation. Every map is also checked to respect the relations of its source.
pub fn validate_functor(f: &dyn Functor, ctx: &GroupCtx, coll: Collection) -> Result<ValidationReport> {
    let poset = sections(ctx, coll)?;
    let mut report = ValidationReport { functor: f.name(), ..Default::default() };
    let gens = ctx.group.generators().to_vec();
    let values: Vec<Vec<u64>> = poset.elements.iter().map(|&s| f.value(ctx, s)).collect();
    let idx = |s: &Section| poset.index_of(s).expect("collection is conjugation closed");
    let well_defined = |m: &IntMatrix, src: &[u64], dst: &[u64]| {
        let img = m.mul(&relation_columns(src));
        eq_mod(&img, &IntMatrix::zeros(img.rows(), img.cols()), dst)
    };

    for (i, &s) in poset.elements.iter().enumerate() {
        for &u in ctx.lattice.generators(s.u) {
            report.checked += 1;
            let c = f.conj(ctx, u, s);
            if !eq_mod(&c, &IntMatrix::identity(values[i].len()), &values[i]) {
                report.violations.push(format!("inner conjugation by element {u} is not the identity at {s}"));
            }
        }
        for &g in &gens {
            report.checked += 1;
            let t = s.conj(ctx, g);
            let c = f.conj(ctx, g, s);
            if !well_defined(&c, &values[i], &values[idx(&t)]) {
                report.violations.push(format!("conjugation by element {g} at {s} does not respect relations"));
            }
            for &h in &gens {
                report.checked += 1;
                let gh = ctx.group.mul(g, h);
                let lhs = f.conj(ctx, gh, s);
                let rhs = f.conj(ctx, g, s.conj(ctx, h)).mul(&f.conj(ctx, h, s));
                if !eq_mod(&lhs, &rhs, &values[idx(&s.conj(ctx, gh))]) {
                    report.violations.push(format!("conjugations by elements {g} and {h} do not compose at {s}"));
                }
            }
        }
    }

    let covers = poset.covers(ctx);
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); poset.len()];
    for &(a, b) in &covers {
        up[a].push(b);
    }
    for &(a, b) in &covers {
        let (sa, sb) = (poset.elements[a], poset.elements[b]);
        let d = f.des(ctx, sb, sa);
        report.checked += 1;
        if !well_defined(&d, &values[b], &values[a]) {
            report.violations.push(format!("destriction {sb} -> {sa} does not respect relations"));
        }
        for &c in &up[b] {
            report.checked += 1;
            let sc = poset.elements[c];
            let direct = f.des(ctx, sc, sa);
            let composed = d.mul(&f.des(ctx, sc, sb));
            if !eq_mod(&direct, &composed, &values[a]) {
                report.violations.push(format!("destrictions do not compose along {sa} ⪯ {sb} ⪯ {sc}"));
            }
        }
        for &g in &gens {
            report.checked += 1;
            let (ga, gb) = (sa.conj(ctx, g), sb.conj(ctx, g));
            let lhs = f.conj(ctx, g, sa).mul(&d);
            let rhs = f.des(ctx, gb, ga).mul(&f.conj(ctx, g, sb));
            if !eq_mod(&lhs, &rhs, &values[idx(&ga)]) {
                report.violations.push(format!("destriction {sb} -> {sa} does not commute with conjugation by element {g}"));
            }
        }
    }
    Ok(report)
}

/// Parses a functor spec: `constant[:A]`, `bdual`, `atomic[:U=a/V=b[:A]]`, or a file path.
pub fn parse_functor(spec: &str, ctx: &GroupCtx) -> Result<Box<dyn Functor>> {
    let mut parts = spec.splitn(2, ':');
    let head = parts.next().unwrap_or_default();
    let rest = parts.next();
    let value = |s: Option<&str>| -> Result<u64> {
        let Some(s) = s else { return Ok(0) };
        let g: AbGroup = s.parse()?;
        match (g.free_rank, g.torsion.as_slice()) {
            (1, []) => Ok(0),
            (0, [m]) => Ok(*m),
            _ => Err(Error::Input(format!("functor value `{s}` must be cyclic"))),
        }
    };
    match head {
        "constant" => Ok(Box::new(Constant::new(value(rest)?))),
        "bdual" | "burnside-dual" => Ok(Box::new(BurnsideDual::new())),
        "atomic" => {
            let (section, order) = match rest {
                None => (default_atomic_section(ctx), 0),
                Some(r) => {
                    let mut it = r.splitn(2, ':');
                    let s: Section = it.next().unwrap_or_default().parse()?;
                    if s.u >= ctx.lattice.len() || s.v >= ctx.lattice.len() || !s.is_valid(ctx) {
                        return Err(Error::Input(format!("{s} is not a section of {}", ctx.label())));
                    }
                    (s, value(it.next())?)
                }
            };
            Ok(Box::new(Atomic::new(ctx, section, order)))
        }
        _ if std::path::Path::new(spec).exists() => Ok(Box::new(load_functor(std::path::Path::new(spec), ctx)?)),
        _ => Err(Error::Input(format!("unknown functor `{spec}`"))),
    }
}
