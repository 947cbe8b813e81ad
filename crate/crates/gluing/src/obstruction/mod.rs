//! Closed-form obstruction groups from the structure of `A_≥2(G)`, and the cross-validation harness.

mod report;

pub use report::{cross_validate, Agreement, CrossInput, CrossOptions, CrossReport, DegreeResult, Route, RouteResult};

use crate::error::{Error, Result};
use crate::group::{classify, GroupCtx, GroupKind};
use crate::homalg::{AbGroup, CochainComplex, Coeff};
use crate::sections::{a_geq2, components_a_geq2, orbit_cochain_complex};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

/// One class of `S` with `S × Z` isolated in `A_≥2(G)` and not conjugate into `B(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SClass {
    pub s: usize,
    pub e: usize,
    pub centralizer_quotient: GroupKind,
    pub normalizer_quotient: GroupKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct SSet {
    pub p: usize,
    /// The unique central subgroup of order p, when the center is cyclic.
    pub z: Option<usize>,
    pub classes: Vec<SClass>,
    pub b_choice: Option<String>,
    pub note: Option<String>,
}

pub fn compute_s_set(ctx: &GroupCtx, p: usize) -> Result<SSet> {
    let l = &ctx.lattice;
    let rank = ctx.p_rank(p);
    if rank < 2 {
        return Err(Error::RankTooSmall { rank });
    }
    if ctx.center_rank(p) >= 2 {
        return Ok(SSet {
            p,
            z: None,
            classes: Vec::new(),
            b_choice: None,
            note: Some("center has p-rank at least 2: A_≥2(G) contracts onto a central rank-2 subgroup".into()),
        });
    }
    let comps = components_a_geq2(ctx, p)?;
    let z = l.central_of_order(&ctx.group, p);
    assert_eq!(z.len(), 1, "cyclic center has one subgroup of order p");
    let z = z[0];
    let big_classes: BTreeSet<usize> = comps.big.iter().map(|&e| l.class_rep(e)).collect();
    let mut isolated_classes = BTreeSet::new();
    for comp in &comps.isolated {
        assert!(comp.len() == 1 && l.log_order(comp[0], p) == 2, "non-big component {comp:?} is not a rank-2 vertex");
        let e = comp[0];
        if !big_classes.contains(&l.class_rep(e)) {
            isolated_classes.insert(l.class_rep(e));
        }
    }
    let mut classes = Vec::new();
    for e in isolated_classes {
        assert!(l.leq(z, e), "isolated subgroup {e} misses the central Z");
        let lines: Vec<usize> = l.interval(l.trivial(), e).filter(|&s| l.order(s) == p && s != z).collect();
        let s_class = l.class_rep(lines[0]);
        assert!(lines.iter().all(|&s| l.class_rep(s) == s_class), "lines of isolated {e} are not all conjugate");
        let s = lines[0];
        let centralizer_quotient = classify(&ctx.subquotient(l.centralizer(s), s)?);
        let normalizer_quotient = classify(&ctx.subquotient(l.normalizer(s), s)?);
        assert!(
            matches!(normalizer_quotient, GroupKind::Cyclic(_) | GroupKind::Quaternion(_)),
            "N_G(S)/S is {normalizer_quotient} for S = {s}"
        );
        classes.push(SClass { s, e, centralizer_quotient, normalizer_quotient });
    }
    Ok(SSet { p, z: Some(z), classes, b_choice: Some(comps.choice), note: None })
}

/// Values of `∂F` on the cyclic and quaternion groups that occur as `C_G(S)/S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DelTable {
    Constant { name: String, value: AbGroup },
    /// `ℤ/n` with `n = 1, 2, 4` for `C_2`, larger cyclic and quaternion 2-groups.
    DadeTorsionTwo,
    /// Values by isomorphism type label such as `C4` or `Q8`.
    Entries { name: String, values: BTreeMap<String, AbGroup> },
}

impl DelTable {
    pub fn constant(value: AbGroup) -> Self {
        DelTable::Constant { name: format!("constant {value}"), value }
    }

    /// Torsion part of the Dade group at odd p: `ℤ/2` on every nontrivial cyclic group.
    pub fn dade_torsion_odd() -> Self {
        DelTable::Constant { name: "dt".into(), value: AbGroup::cyclic(2) }
    }

    /// Dual rational representation ring: `ℤ` on cyclic and quaternion groups.
    pub fn rational_dual() -> Self {
        DelTable::Constant { name: "rq".into(), value: AbGroup::free(1) }
    }

    pub fn name(&self) -> String {
        match self {
            DelTable::Constant { name, .. } | DelTable::Entries { name, .. } => name.clone(),
            DelTable::DadeTorsionTwo => "dt2".into(),
        }
    }

    pub fn constant_value(&self) -> Option<&AbGroup> {
        match self {
            DelTable::Constant { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn lookup(&self, kind: GroupKind) -> Option<AbGroup> {
        match self {
            DelTable::Constant { value, .. } => Some(value.clone()),
            DelTable::DadeTorsionTwo => match kind {
                GroupKind::Cyclic(2) => Some(AbGroup::zero()),
                GroupKind::Cyclic(n) if n.is_power_of_two() => Some(AbGroup::cyclic(2)),
                GroupKind::Quaternion(_) => Some(AbGroup::cyclic(4)),
                _ => None,
            },
            DelTable::Entries { values, .. } => values.get(&kind.to_string()).cloned(),
        }
    }

    /// `dt`, `dt2`, `rq`, `const:<group>` or a JSON file holding a serialized table.
    pub fn parse(spec: &str) -> Result<Self> {
        match spec {
            "dt" => Ok(Self::dade_torsion_odd()),
            "dt2" => Ok(DelTable::DadeTorsionTwo),
            "rq" => Ok(Self::rational_dual()),
            _ => {
                if let Some(a) = spec.strip_prefix("const:") {
                    return Ok(Self::constant(a.parse()?));
                }
                let path = Path::new(spec);
                if !path.exists() {
                    return Err(Error::Input(format!("unknown table `{spec}`")));
                }
                let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{spec}: {e}")))?;
                serde_json::from_str(&text).map_err(|e| Error::Input(format!("{spec}: {e}")))
            }
        }
    }
}

impl fmt::Display for DelTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Augmented complex of invariant cochains on `A_≥2(G)`; degree 0 is reduced `H⁰` of the orbit space.
pub fn a_geq2_orbit_complex(ctx: &GroupCtx, p: usize) -> CochainComplex {
    orbit_cochain_complex(&a_geq2(ctx, p).order_complex(ctx))
}

/// `H̃^n(A_≥2(G)/G; A)`, summed over the cyclic factors of `A`.
pub fn orbit_cohomology(ctx: &GroupCtx, p: usize, n: i32, a: &AbGroup) -> AbGroup {
    let c = a_geq2_orbit_complex(ctx, p);
    if n < c.start() || n > c.end() {
        return AbGroup::zero();
    }
    let parts: Vec<AbGroup> = a
        .orders()
        .into_iter()
        .map(|m| c.cohomology(n, if m == 0 { Coeff::Z } else { Coeff::Zmod(m) }))
        .collect();
    AbGroup::sum_all(&parts)
}

#[derive(Clone, Debug, Serialize)]
pub struct RhetoricalObs {
    pub obs: AbGroup,
    pub s_set: SSet,
    /// Summand `∂F(C_G(S)/S)` for each class in the 𝒮-set.
    pub summands: Vec<AbGroup>,
    /// For a constant table `A`: `H̃⁰(A_≥2(G)/G; A)`.
    pub orbit_h0: Option<AbGroup>,
}

impl RhetoricalObs {
    pub fn consistent(&self) -> bool {
        self.orbit_h0.as_ref().is_none_or(|h| *h == self.obs)
    }
}

/// `⊕_{S ∈ 𝒮} ∂F(C_G(S)/S)` for a rhetorical functor described by its faithful parts.
pub fn obs_rhetorical(ctx: &GroupCtx, p: usize, table: &DelTable) -> Result<RhetoricalObs> {
    let s_set = compute_s_set(ctx, p)?;
    let summands: Vec<AbGroup> = s_set
        .classes
        .iter()
        .map(|c| table.lookup(c.centralizer_quotient).ok_or_else(|| Error::TableIncomplete(c.centralizer_quotient.to_string())))
        .collect::<Result<_>>()?;
    let obs = AbGroup::sum_all(&summands);
    let orbit_h0 = table.constant_value().map(|a| orbit_cohomology(ctx, p, 0, a));
    Ok(RhetoricalObs { obs, s_set, summands, orbit_h0 })
}

fn require_rank_two(ctx: &GroupCtx, p: usize) -> Result<()> {
    let rank = ctx.p_rank(p);
    if rank < 2 {
        return Err(Error::RankTooSmall { rank });
    }
    Ok(())
}

fn require_odd(p: usize) -> Result<()> {
    if p == 2 {
        return Err(Error::Input("this formula needs an odd prime".into()));
    }
    Ok(())
}

/// Torsion Dade group at odd p: `H̃⁰(A_≥2(G)/G; 𝔽₂)`.
pub fn obs_dt_odd(ctx: &GroupCtx, p: usize) -> Result<AbGroup> {
    require_odd(p)?;
    require_rank_two(ctx, p)?;
    Ok(orbit_cohomology(ctx, p, 0, &AbGroup::cyclic(2)))
}

/// Dual rational representation ring: `H̃⁰(A_≥2(G)/G; ℤ)`.
pub fn obs_rq_dual(ctx: &GroupCtx, p: usize) -> Result<AbGroup> {
    require_rank_two(ctx, p)?;
    Ok(orbit_cohomology(ctx, p, 0, &AbGroup::free(1)))
}

/// Torsion Dade group of a 2-group: `⊕ ℤ/n_S`.
pub fn obs_dt_2group(ctx: &GroupCtx) -> Result<AbGroup> {
    Ok(obs_rhetorical(ctx, 2, &DelTable::DadeTorsionTwo)?.obs)
}

pub fn h1_orbit(ctx: &GroupCtx, p: usize, coeff: Coeff) -> AbGroup {
    let c = a_geq2_orbit_complex(ctx, p);
    if c.end() < 1 {
        return AbGroup::zero();
    }
    c.cohomology(1, coeff)
}

/// `H¹` from G-invariant cocycles on `A_≥2(G)` modulo invariant coboundaries.
pub fn h1_invariant_cocycles(ctx: &GroupCtx, p: usize) -> AbGroup {
    crate::sections::h1_invariant_cocycles(&a_geq2(ctx, p).order_complex(ctx))
}

/// Kernel of reduction mod 2 on `H¹` of a cochain complex.
pub fn mod2_kernel_on_h1(c: &CochainComplex) -> AbGroup {
    if c.end() < 1 {
        return AbGroup::zero();
    }
    c.induced_kernel(1, Coeff::Z, Coeff::Zmod(2))
}

/// Dade group at odd p: kernel of `H¹(A_≥2(G)/G; ℤ) → H¹(A_≥2(G)/G; ℤ/2)`, which is exactly the
/// obstruction group.
pub fn obs_dade_odd(ctx: &GroupCtx, p: usize) -> Result<AbGroup> {
    require_odd(p)?;
    require_rank_two(ctx, p)?;
    Ok(mod2_kernel_on_h1(&a_geq2_orbit_complex(ctx, p)))
}

/// Dade group modulo its torsion at odd p: `H¹(A_≥2(G)/G; ℤ)`.
pub fn obs_df_odd(ctx: &GroupCtx, p: usize) -> Result<AbGroup> {
    require_odd(p)?;
    require_rank_two(ctx, p)?;
    Ok(h1_orbit(ctx, p, Coeff::Z))
}
