use gluing::functor::*;
use gluing::group::GroupCtx;
use gluing::homalg::{AbGroup, Coeff};
use gluing::sections::Collection;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "D8".into());
    let ctx = GroupCtx::from_spec(&spec)?;
    let functors = ["constant", "constant:Z/2", "bdual", "atomic"];

    for name in functors {
        let f = parse_functor(name, &ctx)?;
        let f = f.as_ref();
        let v = validate_functor(f, &ctx, Collection::Proper)?;
        let (kernel, obstruction) = obs_direct(f, &ctx, Coeff::Z)?;
        let limit = gluing_limit(f, &ctx, Coeff::Z)?;
        println!("{:<16} valid {:<5} limit {:<6} kernel {:<4} obstruction {}", f.name(), v.passed(), limit.group.to_string(), kernel.to_string(), obstruction);
    }

    // gluing data for the Burnside dual, one block per class of nontrivial subgroups
    let f = BurnsideDual::new();
    let limit = gluing_limit(&f, &ctx, Coeff::Z)?;
    println!("\nBurnside dual blocks:");
    for (h, s) in limit.reps.iter().zip(&limit.sections) {
        println!("  H = {h:>2}  block {s}  value {}", AbGroup::from_cyclic_orders(&f.value(&ctx, *s)));
    }
    let detection = detection_map(&f, &ctx, Coeff::Z)?;
    println!("detection map: {} -> {}", detection.source, detection.target);

    // round trip through a functor file
    let path = std::env::temp_dir().join(format!("gluing-{}-bdual.json", ctx.label()));
    save_functor(&f, &ctx, Collection::All, &path)?;
    let loaded = load_functor(&path, &ctx)?;
    println!("reloaded from {}: obstruction {}", path.display(), obs_direct(&loaded, &ctx, Coeff::Z)?.1);
    Ok(())
}
