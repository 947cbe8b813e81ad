use gluing::group::{corpus, GroupCtx};
use gluing::homalg::AbGroup;
use gluing::obstruction::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_order = std::env::args().nth(1).map_or(Ok(32), |s| s.parse())?;
    println!("{:<10} {:>6} {:<22} {:<8} {:<10} {:<8} {:<6}", "group", "|S|", "S classes", "rq", "dt", "H1", "dade");
    for spec in corpus(max_order) {
        let ctx = GroupCtx::from_spec(&spec)?;
        let p = ctx.prime().expect("corpus groups are p-groups");
        if ctx.p_rank(p) < 2 {
            continue;
        }
        let s = compute_s_set(&ctx, p)?;
        let classes: Vec<String> = s.classes.iter().map(|c| format!("{}", c.normalizer_quotient)).collect();
        let dt = if p == 2 { obs_dt_2group(&ctx) } else { obs_dt_odd(&ctx, p) };
        let dade = if p == 2 { "-".to_string() } else { obs_dade_odd(&ctx, p)?.to_string() };
        println!(
            "{:<10} {:>6} {:<22} {:<8} {:<10} {:<8} {:<6}",
            ctx.label(),
            s.classes.len(),
            classes.join(","),
            obs_rq_dual(&ctx, p)?.to_string(),
            dt.map_or_else(|e| format!("({e})"), |a| a.to_string()),
            h1_orbit(&ctx, p, gluing::homalg::Coeff::Z).to_string(),
            dade
        );
    }

    // the formula against the orbit space for a constant table, with its summands
    let ctx = GroupCtx::from_spec("XS(3,+)")?;
    let r = obs_rhetorical(&ctx, 3, &DelTable::constant(AbGroup::cyclic(2)))?;
    println!("\nXS(3,+) with constant Z/2: formula {} = orbit space {} ({} summands)", r.obs, r.orbit_h0.as_ref().unwrap(), r.summands.len());

    let table = DelTable::parse("dt2")?;
    println!("table {table}: {}", serde_json::to_string(&table)?);
    Ok(())
}
