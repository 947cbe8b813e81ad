use gluing::group::{classify, corpus, GroupCtx};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<10} {:>5} {:>6} {:>9} {:>8} {:>7}  kind", "group", "order", "p-rank", "subgroups", "classes", "Z rank");
    for spec in corpus(32) {
        let ctx = GroupCtx::from_spec(&spec)?;
        let p = ctx.prime().expect("corpus groups are p-groups");
        println!(
            "{:<10} {:>5} {:>6} {:>9} {:>8} {:>7}  {}",
            ctx.label(),
            ctx.order(),
            ctx.p_rank(p),
            ctx.lattice.len(),
            ctx.lattice.classes().len(),
            ctx.center_rank(p),
            classify(&ctx.group)
        );
    }

    // a group file in the same format the CLI reads
    let path = std::env::temp_dir().join("gluing-example-group.json");
    std::fs::write(&path, r#"{"label": "C2xC4", "degree": 6, "generators": [[1,0,2,3,4,5], [0,1,3,4,5,2]]}"#)?;
    let ctx = GroupCtx::from_spec(path.to_str().unwrap())?;
    let l = &ctx.lattice;
    println!("\n{} from file: order {}, {} subgroups", ctx.label(), ctx.order(), l.len());
    for id in l.class_reps() {
        println!("  subgroup {id:>2}: order {:>2}, normal {}, normalizer {}", l.order(id), l.is_normal(id), l.normalizer(id));
    }
    Ok(())
}
