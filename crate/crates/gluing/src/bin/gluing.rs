use clap::{Args, Parser, Subcommand};
use gluing::error::{Error, Result};
use gluing::functor::{parse_functor, DEFAULT_CHAIN_CAP};
use gluing::group::{classify, corpus, load_group, GroupCtx, DEFAULT_ELEMENT_CAP};
use gluing::homalg::Coeff;
use gluing::homalg::AbGroup;
use gluing::obstruction::{compute_s_set, cross_validate, h1_orbit, orbit_cohomology, CrossInput, CrossOptions, DelTable, Route, SSet};
use gluing::oliver::STEINBERG_RANK_CAP;
use gluing::sections::Collection;
use gluing::verify::{verify, Theorem};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const VERIFY_FAILED: u8 = 2;
const INPUT_ERROR: u8 = 3;
const CAP_EXCEEDED: u8 = 4;

#[derive(Parser)]
#[command(name = "gluing", about = "Gluing obstructions for destriction functors on finite p-groups")]
struct Cli {
    /// Worker threads for batch jobs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the JSON report here as well as to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute kernel and obstruction groups along several routes and compare them.
    Obs(ObsArgs),
    /// Check one identity over a group corpus.
    Verify {
        /// One of the ids printed by `gluing verify --list`.
        theorem: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 32)]
        max_order: usize,
        /// Comma-separated group specs instead of the built-in corpus.
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
    },
    /// List or describe catalog groups.
    Groups {
        #[command(subcommand)]
        action: GroupsAction,
    },
}

#[derive(Subcommand)]
enum GroupsAction {
    List {
        #[arg(long, default_value_t = 64)]
        max_order: usize,
    },
    Describe {
        group: String,
    },
}

#[derive(Args)]
struct ObsArgs {
    /// Catalog name (`D8`, `XS(3,+)`, `C4xC2`) or group file.
    #[arg(long)]
    group: String,
    #[arg(long)]
    prime: Option<usize>,
    /// `constant[:Z/n]`, `bdual`, `atomic[:U=i/V=j[:Z/n]]` or a functor file.
    #[arg(long, conflicts_with = "table")]
    functor: Option<String>,
    /// `dt`, `dt2`, `rq`, `const:<group>` or a table file.
    #[arg(long)]
    table: Option<String>,
    #[arg(long, value_delimiter = ',')]
    routes: Vec<String>,
    #[arg(long, default_value = "proper")]
    collection: String,
    /// Degree range such as `-1..1`.
    #[arg(long, default_value = "-1..1", allow_hyphen_values = true)]
    degrees: String,
    #[arg(long, default_value = "Z")]
    coeff: String,
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    element_cap: usize,
    #[arg(long, default_value_t = DEFAULT_CHAIN_CAP)]
    chain_cap: usize,
    #[arg(long, default_value_t = STEINBERG_RANK_CAP)]
    rank_cap: usize,
    /// Add per-route wall-clock times to the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Serialize)]
struct ErrorReport {
    error: String,
    exit_code: u8,
}

fn emit<T: Serialize>(report: &T, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e),
        _ => {}
    }
    if let Some(path) = out {
        std::fs::write(path, text + "\n")?;
    }
    Ok(())
}

fn exit_for(e: &Error) -> u8 {
    if e.is_cap() {
        CAP_EXCEEDED
    } else {
        INPUT_ERROR
    }
}

fn parse_degrees(s: &str) -> Result<(i32, i32)> {
    let bad = || Error::Input(format!("degree range `{s}` is not of the form a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn load(spec: &str, element_cap: usize) -> Result<GroupCtx> {
    let g = load_group(spec)?;
    if g.order() > element_cap {
        return Err(Error::OrderBound { what: "group order", size: g.order(), cap: element_cap });
    }
    GroupCtx::new(g)
}

fn cmd_obs(a: &ObsArgs, out: Option<&PathBuf>) -> Result<u8> {
    let ctx = load(&a.group, a.element_cap)?;
    let p = match (a.prime, ctx.prime()) {
        (Some(p), _) => p,
        (None, Some(p)) => p,
        (None, None) => return Err(Error::Input("--prime is required for groups that are not p-groups".into())),
    };
    let (lo, hi) = parse_degrees(&a.degrees)?;
    let opts = CrossOptions {
        coeff: a.coeff.parse::<Coeff>()?,
        collection: Collection::parse(&a.collection, Some(p))?,
        max_degree: hi,
        chain_cap: a.chain_cap,
        rank_cap: a.rank_cap,
        timings: a.timings,
    };
    let mut routes: Vec<Route> = a.routes.iter().map(|r| r.parse()).collect::<Result<_>>()?;
    let functor = a.functor.as_deref().map(|f| parse_functor(f, &ctx)).transpose()?;
    let table = a.table.as_deref().map(DelTable::parse).transpose()?;
    let input = match (&functor, &table) {
        (Some(f), None) => CrossInput::Functor(f.as_ref()),
        (None, Some(t)) => CrossInput::Table(t),
        _ => return Err(Error::Input("give exactly one of --functor and --table".into())),
    };
    if routes.is_empty() {
        routes = match input {
            CrossInput::Functor(_) => vec![Route::Direct, Route::Bar],
            CrossInput::Table(t) if t.constant_value().is_some() => vec![Route::Formula, Route::Orbit],
            CrossInput::Table(_) => vec![Route::Formula],
        };
    }
    let functor_input = matches!(input, CrossInput::Functor(_));
    if let Some(r) = routes.iter().find(|r| r.needs_functor() != functor_input) {
        return Err(Error::Input(format!("route {r} does not apply to this input")));
    }
    let mut report = cross_validate(&ctx, p, input, &routes, &opts);
    for r in &mut report.routes {
        r.results.retain(|d| (lo..=hi).contains(&d.degree));
    }
    report.agreements.retain(|x| (lo..=hi).contains(&x.degree));
    emit(&report, out).map_err(|e| Error::Input(e.to_string()))?;
    Ok(if report.cap_exceeded() {
        CAP_EXCEEDED
    } else if report.routes.iter().any(|r| r.error.is_some()) {
        INPUT_ERROR
    } else if !report.passed() {
        VERIFY_FAILED
    } else {
        0
    })
}

#[derive(Serialize)]
struct TheoremEntry {
    id: &'static str,
    description: &'static str,
}

fn cmd_verify(theorem: Option<&str>, list: bool, max_order: usize, groups: &[String], out: Option<&PathBuf>) -> Result<u8> {
    if list || theorem.is_none() {
        let entries: Vec<TheoremEntry> = Theorem::ALL.iter().map(|t| TheoremEntry { id: t.id(), description: t.description() }).collect();
        emit(&entries, out).map_err(|e| Error::Input(e.to_string()))?;
        return Ok(0);
    }
    let theorem: Theorem = theorem.unwrap().parse()?;
    let groups = if groups.is_empty() { corpus(max_order) } else { groups.to_vec() };
    let report = verify(theorem, &groups);
    emit(&report, out).map_err(|e| Error::Input(e.to_string()))?;
    Ok(if report.cap_exceeded() {
        CAP_EXCEEDED
    } else if !report.passed {
        VERIFY_FAILED
    } else {
        0
    })
}

#[derive(Serialize)]
struct GroupSummary {
    name: String,
    order: usize,
    prime: Option<usize>,
}

#[derive(Serialize)]
struct GroupDescription {
    name: String,
    order: usize,
    degree: usize,
    kind: String,
    prime: Option<usize>,
    p_rank: Option<usize>,
    center_p_rank: Option<usize>,
    subgroups: usize,
    subgroup_classes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_set: Option<SSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit_space: Option<OrbitSpace>,
}

/// Low-degree reduced cohomology of `A_≥2(G)/G` with integer coefficients.
#[derive(Serialize)]
struct OrbitSpace {
    h0: AbGroup,
    h1: AbGroup,
}

fn cmd_groups(action: &GroupsAction, out: Option<&PathBuf>) -> Result<u8> {
    match action {
        GroupsAction::List { max_order } => {
            let list: Vec<GroupSummary> = corpus(*max_order)
                .into_iter()
                .map(|name| {
                    let g = load_group(&name).expect("corpus groups load");
                    GroupSummary { order: g.order(), prime: g.prime(), name }
                })
                .collect();
            emit(&list, out).map_err(|e| Error::Input(e.to_string()))?;
        }
        GroupsAction::Describe { group } => {
            let ctx = GroupCtx::from_spec(group)?;
            let p = ctx.prime();
            let rank_two = p.filter(|&p| ctx.p_rank(p) >= 2);
            let desc = GroupDescription {
                name: ctx.label().to_string(),
                order: ctx.order(),
                degree: ctx.group.degree(),
                kind: classify(&ctx.group).to_string(),
                prime: p,
                p_rank: p.map(|p| ctx.p_rank(p)),
                center_p_rank: p.map(|p| ctx.center_rank(p)),
                subgroups: ctx.lattice.len(),
                subgroup_classes: ctx.lattice.classes().len(),
                s_set: rank_two.map(|p| compute_s_set(&ctx, p)).transpose()?,
                orbit_space: rank_two.map(|p| OrbitSpace {
                    h0: orbit_cohomology(&ctx, p, 0, &AbGroup::free(1)),
                    h1: h1_orbit(&ctx, p, Coeff::Z),
                }),
            };
            emit(&desc, out).map_err(|e| Error::Input(e.to_string()))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool is configured once");
    }
    let out = cli.out.as_ref();
    let result = match &cli.command {
        Command::Obs(a) => cmd_obs(a, out),
        Command::Verify { theorem, list, max_order, groups } => cmd_verify(theorem.as_deref(), *list, *max_order, groups, out),
        Command::Groups { action } => cmd_groups(action, out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = exit_for(&e);
            eprintln!("error: {e}");
            let _ = emit(&ErrorReport { error: e.to_string(), exit_code: code }, out);
            ExitCode::from(code)
        }
    }
}
