use super::{obs_rhetorical, orbit_cohomology, DelTable};
use crate::error::{Error, Result};
use crate::functor::{check_limit_iso, obs_direct, reduced_cohomology, Functor, DEFAULT_CHAIN_CAP};
use crate::group::{classify, GroupCtx, GroupKind};
use crate::homalg::{AbGroup, Coeff};
use crate::oliver::{oliver_complex, OliverOptions, STEINBERG_RANK_CAP};
use crate::sections::Collection;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Kernel and cokernel of the detection map.
    Direct,
    /// Normalized bar complex over the orbit category of sections.
    Bar,
    /// Steinberg complex over the Quillen category.
    Oliver,
    /// Sum of faithful parts over the 𝒮-set.
    Formula,
    /// Reduced cohomology of `A_≥2(G)/G`.
    Orbit,
}

impl Route {
    pub fn needs_functor(self) -> bool {
        matches!(self, Route::Direct | Route::Bar | Route::Oliver)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Route::Direct => "direct",
            Route::Bar => "bar",
            Route::Oliver => "oliver",
            Route::Formula => "formula",
            Route::Orbit => "orbit",
        };
        f.write_str(s)
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "direct" => Ok(Route::Direct),
            "bar" => Ok(Route::Bar),
            "oliver" => Ok(Route::Oliver),
            "formula" => Ok(Route::Formula),
            "orbit" => Ok(Route::Orbit),
            other => Err(Error::Input(format!("unknown route `{other}`"))),
        }
    }
}

#[derive(Clone, Copy)]
pub enum CrossInput<'a> {
    Functor(&'a dyn Functor),
    Table(&'a DelTable),
}

impl CrossInput<'_> {
    fn name(&self) -> String {
        match self {
            CrossInput::Functor(f) => f.name(),
            CrossInput::Table(t) => format!("table {t}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CrossOptions {
    pub coeff: Coeff,
    /// Collection for the bar route.
    pub collection: Collection,
    pub max_degree: i32,
    pub chain_cap: usize,
    pub rank_cap: usize,
    pub timings: bool,
}

impl Default for CrossOptions {
    fn default() -> Self {
        CrossOptions {
            coeff: Coeff::Z,
            collection: Collection::Proper,
            max_degree: 1,
            chain_cap: DEFAULT_CHAIN_CAP,
            rank_cap: STEINBERG_RANK_CAP,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeResult {
    pub degree: i32,
    pub result: AbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteResult {
    pub route: Route,
    pub results: Vec<DegreeResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub cap_exceeded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl RouteResult {
    pub fn at(&self, degree: i32) -> Option<&AbGroup> {
        self.results.iter().find(|r| r.degree == degree).map(|r| &r.result)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub first: Route,
    pub second: Route,
    pub degree: i32,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossReport {
    pub group: String,
    pub order: usize,
    pub prime: usize,
    pub input: String,
    pub coefficients: String,
    pub collection: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_choice: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
    pub routes: Vec<RouteResult>,
    pub agreements: Vec<Agreement>,
    /// Whether gluing data and the limit over the orbit category match under the explicit maps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_iso: Option<bool>,
    pub routes_agree: bool,
    pub witnesses: Vec<String>,
}

impl CrossReport {
    pub fn route(&self, r: Route) -> Option<&RouteResult> {
        self.routes.iter().find(|x| x.route == r)
    }

    pub fn cap_exceeded(&self) -> bool {
        self.routes.iter().any(|r| r.cap_exceeded)
    }

    pub fn passed(&self) -> bool {
        self.routes_agree && self.routes.iter().all(|r| r.error.is_none()) && self.limit_iso != Some(false)
    }
}

fn run_route(ctx: &GroupCtx, p: usize, input: CrossInput, route: Route, opts: &CrossOptions) -> Result<Vec<DegreeResult>> {
    let pack = |v: Vec<(i32, AbGroup)>| v.into_iter().map(|(degree, result)| DegreeResult { degree, result }).collect();
    match (route, input) {
        (Route::Direct, CrossInput::Functor(f)) => {
            let (k, o) = obs_direct(f, ctx, opts.coeff)?;
            Ok(pack(vec![(-1, k), (0, o)]))
        }
        (Route::Bar, CrossInput::Functor(f)) => {
            let max = opts.max_degree.max(0) as usize;
            Ok(pack(reduced_cohomology(f, ctx, opts.collection, max, opts.coeff, opts.chain_cap)?))
        }
        (Route::Oliver, CrossInput::Functor(f)) => {
            let o = oliver_complex(f, ctx, OliverOptions { rank_cap: opts.rank_cap })?;
            let top = opts.max_degree.min(o.complex.end().max(0) + 1);
            let out = (-1..=top).map(|n| Ok((n, o.cohomology(n, opts.coeff)?))).collect::<Result<_>>()?;
            Ok(pack(out))
        }
        (Route::Formula, CrossInput::Table(t)) => {
            let r = obs_rhetorical(ctx, p, t)?;
            Ok(pack(vec![(-1, AbGroup::zero()), (0, r.obs)]))
        }
        (Route::Orbit, CrossInput::Table(t)) => {
            let a = t.constant_value().ok_or_else(|| Error::Input(format!("orbit route needs a constant table, got {t}")))?;
            Ok(pack(vec![(0, orbit_cohomology(ctx, p, 0, a))]))
        }
        (r, i) => Err(Error::Input(format!("route {r} does not apply to {}", i.name()))),
    }
}

const ROQUETTE_CAVEAT: &str = "rank-2 Roquette group: an alternative invariant-cochain formula with pZ \
     coefficients differs here; this report uses the orbit-space formula";

/// Runs each route and compares every pair on the degrees both computed.
pub fn cross_validate(ctx: &GroupCtx, p: usize, input: CrossInput, routes: &[Route], opts: &CrossOptions) -> CrossReport {
    let mut results = Vec::new();
    let mut witnesses = Vec::new();
    for &route in routes {
        let start = Instant::now();
        let out = run_route(ctx, p, input, route, opts);
        let millis = opts.timings.then(|| start.elapsed().as_millis() as u64);
        let (res, error, cap_exceeded) = match out {
            Ok(r) => (r, None, false),
            Err(e) => {
                witnesses.push(format!("{route}: {e}"));
                (Vec::new(), Some(e.to_string()), e.is_cap())
            }
        };
        results.push(RouteResult { route, results: res, error, cap_exceeded, millis });
    }
    let mut agreements = Vec::new();
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            for r in &a.results {
                if let Some(other) = b.at(r.degree) {
                    let agree = *other == r.result;
                    if !agree {
                        witnesses.push(format!("degree {}: {} gives {}, {} gives {}", r.degree, a.route, r.result, b.route, other));
                    }
                    agreements.push(Agreement { first: a.route, second: b.route, degree: r.degree, agree });
                }
            }
        }
    }
    let mut limit_iso = None;
    if let CrossInput::Functor(f) = input {
        if routes.contains(&Route::Direct) && routes.contains(&Route::Bar) && opts.collection == Collection::Proper {
            match check_limit_iso(f, ctx, opts.chain_cap) {
                Ok(r) => {
                    if !r.passed() {
                        witnesses.push(format!("limit comparison: {r:?}"));
                    }
                    limit_iso = Some(r.passed());
                }
                Err(e) => witnesses.push(format!("limit comparison: {e}")),
            }
        }
    }
    let formula_routes = routes.iter().any(|r| !r.needs_functor());
    let b_choice = if formula_routes {
        super::compute_s_set(ctx, p).ok().and_then(|s| s.b_choice.or(s.note))
    } else {
        None
    };
    let caveat = (formula_routes && matches!(classify(&ctx.group), GroupKind::Dihedral(_) | GroupKind::Semidihedral(_)))
        .then(|| ROQUETTE_CAVEAT.to_string());
    CrossReport {
        group: ctx.label().to_string(),
        order: ctx.order(),
        prime: p,
        input: input.name(),
        coefficients: opts.coeff.to_string(),
        collection: opts.collection.to_string(),
        b_choice,
        caveat,
        routes_agree: agreements.iter().all(|a| a.agree),
        routes: results,
        agreements,
        limit_iso,
        witnesses,
    }
}
