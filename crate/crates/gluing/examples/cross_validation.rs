use gluing::functor::parse_functor;
use gluing::group::{corpus, GroupCtx};
use gluing::obstruction::{cross_validate, CrossInput, CrossOptions, DelTable, Route};
use gluing::verify::{verify, Theorem};
use std::time::Instant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = GroupCtx::from_spec("Q8xC2")?;
    let opts = CrossOptions { rank_cap: 4, ..Default::default() };
    for spec in ["constant", "bdual", "atomic"] {
        let f = parse_functor(spec, &ctx)?;
        let r = cross_validate(&ctx, 2, CrossInput::Functor(f.as_ref()), &[Route::Direct, Route::Bar, Route::Oliver], &opts);
        let obs: Vec<String> = r.routes.iter().map(|x| format!("{}={}", x.route, x.at(0).map_or("-".into(), |g| g.to_string()))).collect();
        println!("{} {:<16} degree 0: {}  agree {}  limit iso {:?}", r.group, r.input, obs.join(" "), r.routes_agree, r.limit_iso);
    }

    let d16 = GroupCtx::from_spec("D16")?;
    let table = DelTable::constant(gluing::homalg::AbGroup::free(1));
    let r = cross_validate(&d16, 2, CrossInput::Table(&table), &[Route::Formula, Route::Orbit], &opts);
    println!("\n{}", serde_json::to_string_pretty(&r)?);

    let groups = corpus(16);
    for t in [Theorem::ObstructionAsExt, Theorem::CentralRank, Theorem::RhetoricalFormula, Theorem::InvariantCocycles, Theorem::DadeKernel] {
        let start = Instant::now();
        let report = verify(t, &groups);
        let checks: usize = report.groups.iter().map(|g| g.checks).sum();
        let skipped = report.groups.iter().filter(|g| g.skipped.is_some()).count();
        println!("{:<20} passed {:<5} {checks:>4} checks, {skipped:>2} groups skipped, {:?}", t.id(), report.passed, start.elapsed());
    }
    Ok(())
}
