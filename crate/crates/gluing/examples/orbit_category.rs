use gluing::group::GroupCtx;
use gluing::sections::{check_opposite_iso, orbit_category, quillen_category, sections, Collection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "D8".into());
    let ctx = GroupCtx::from_spec(&spec)?;
    let p = ctx.prime().ok_or("expected a p-group")?;

    for coll in [Collection::All, Collection::Proper, Collection::E(p), Collection::C(p), Collection::Subnormal] {
        let poset = sections(&ctx, coll)?;
        let cat = orbit_category(&ctx, coll, true)?;
        println!(
            "{coll:<10} {:>4} sections, {:>3} classes, skeleton {:>3} objects / {:>4} morphisms, EI {}",
            poset.len(),
            poset.class_reps(&ctx).len(),
            cat.num_objects(),
            cat.num_morphisms(),
            cat.is_ei()
        );
    }

    let cat = orbit_category(&ctx, Collection::Proper, true)?;
    println!("\nproper skeleton of {}:", ctx.label());
    for (x, s) in cat.objects.iter().enumerate() {
        let out: Vec<String> = (0..cat.num_objects()).filter(|&y| !cat.hom(x, y).is_empty()).map(|y| format!("{y}:{}", cat.hom(x, y).len())).collect();
        println!("  {x:>2} {s} -> {}", out.join(" "));
    }

    let q = quillen_category(&ctx, p, false);
    println!("\nQuillen category: {} objects, {} morphisms, laws hold {}", q.num_objects(), q.num_morphisms(), q.check_laws());
    let iso = check_opposite_iso(&ctx, p)?;
    println!("centralizer sections vs Quillen (opposite): {} hom-sets, {} compositions, passed {}", iso.hom_sets_checked, iso.compositions_checked, iso.passed());
    Ok(())
}
