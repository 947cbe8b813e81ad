use gluing::functor::{BurnsideDual, Constant, Functor};
use gluing::group::GroupCtx;
use gluing::homalg::Coeff;
use gluing::oliver::{oliver_complex, steinberg_module, OliverOptions};
use std::time::Instant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "D8".into());
    let ctx = GroupCtx::from_spec(&spec)?;
    let p = ctx.prime().ok_or("expected a p-group")?;

    for e in ctx.lattice.elementary_abelian(&ctx.group, p, false) {
        if ctx.lattice.is_class_rep(e) {
            let st = steinberg_module(&ctx, e, 4)?;
            println!("Steinberg module of E = {e:>2} (rank {}): {} flags, Z-rank {}", st.rank, st.flags.len(), st.dim());
        }
    }

    let functors: Vec<Box<dyn Functor>> = vec![Box::new(BurnsideDual::new()), Box::new(Constant::integers())];
    for f in &functors {
        let start = Instant::now();
        let o = oliver_complex(f.as_ref(), &ctx, OliverOptions { rank_cap: 4 })?;
        println!("\n{} on {} ({:?})", f.name(), ctx.label(), start.elapsed());
        for (k, terms) in o.terms.iter().enumerate() {
            for t in terms {
                println!("  rank {k} E = {:>2} section {}  St rank {:>2}  Hom = {}", t.e, t.section, t.steinberg.rank, t.hom.group);
            }
        }
        let shape: Vec<String> = o.term_groups().iter().map(|g| g.to_string()).collect();
        println!("  terms: {}", shape.join(" -> "));
        for n in -1..=1 {
            println!("  H~{n}: over Z {}, over Z/{p} {}", o.cohomology(n, Coeff::Z)?, o.cohomology(n, Coeff::Zmod(p as u64))?);
        }
    }
    Ok(())
}
