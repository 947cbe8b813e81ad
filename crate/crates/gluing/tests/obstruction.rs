use gluing::error::Error;
use gluing::functor::*;
use gluing::group::{catalog, corpus, GroupCtx, GroupKind};
use gluing::homalg::{AbGroup, Coeff};
use gluing::obstruction::*;
use gluing::sections::{order_complex, orbit_cochain_complex};
use petgraph::unionfind::UnionFind;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn ctx(spec: &str) -> GroupCtx {
    GroupCtx::new(catalog(spec).unwrap()).unwrap()
}

#[test]
fn dihedral_s_set() {
    let c = ctx("D8");
    let l = &c.lattice;
    let s = compute_s_set(&c, 2).unwrap();
    assert_eq!(s.classes.len(), 1);
    let class = &s.classes[0];
    assert_eq!(class.centralizer_quotient, GroupKind::Cyclic(2));
    assert_eq!(l.centralizer(class.s), class.e);
    let z = s.z.unwrap();
    assert_eq!(l.order(z), 2);
    assert!(l.is_normal(class.e) && l.leq(z, class.e) && l.leq(class.s, class.e));
    let comps = gluing::sections::components_a_geq2(&c, 2).unwrap();
    assert!(!comps.big.contains(&class.e));
    assert!(s.b_choice.unwrap().contains("normal"));
}

#[test]
fn extraspecial_s_set() {
    let c = ctx("XS(3,+)");
    let s = compute_s_set(&c, 3).unwrap();
    assert_eq!(s.classes.len(), 3);
    assert!(s.classes.iter().all(|x| x.centralizer_quotient == GroupKind::Cyclic(3)));
    assert!(compute_s_set(&ctx("XS(3,-)"), 3).unwrap().classes.is_empty());
}

#[test]
fn s_set_edge_cases() {
    for g in ["C2^2", "C3^2", "C4xC2", "D8xC2"] {
        let c = ctx(g);
        let s = compute_s_set(&c, c.prime().unwrap()).unwrap();
        assert!(s.classes.is_empty() && s.note.is_some(), "{g}");
    }
    for (g, p) in [("C9", 3), ("Q8", 2), ("C2", 2)] {
        assert!(matches!(compute_s_set(&ctx(g), p), Err(Error::RankTooSmall { .. })), "{g}");
    }
}

#[test]
fn rhetorical_spot_values() {
    let d8 = ctx("D8");
    let r = obs_rhetorical(&d8, 2, &DelTable::rational_dual()).unwrap();
    assert_eq!((r.obs.clone(), r.orbit_h0.clone()), (AbGroup::free(1), Some(AbGroup::free(1))));
    let xs = ctx("XS(3,+)");
    let r = obs_rhetorical(&xs, 3, &DelTable::constant(AbGroup::cyclic(2))).unwrap();
    assert_eq!(r.obs, AbGroup::from_cyclic_orders(&[2, 2, 2]));
    assert!(r.consistent());
    assert!(matches!(obs_rhetorical(&ctx("C8"), 2, &DelTable::rational_dual()), Err(Error::RankTooSmall { .. })));
}

#[test]
fn dade_two_group_table() {
    let t = DelTable::DadeTorsionTwo;
    assert_eq!(t.lookup(GroupKind::Cyclic(2)), Some(AbGroup::zero()));
    assert_eq!(t.lookup(GroupKind::Cyclic(8)), Some(AbGroup::cyclic(2)));
    assert_eq!(t.lookup(GroupKind::Quaternion(16)), Some(AbGroup::cyclic(4)));
    assert_eq!(t.lookup(GroupKind::Dihedral(8)), None);
    for g in ["D8", "SD16", "D16", "C2^3"] {
        assert!(obs_dt_2group(&ctx(g)).unwrap().is_zero(), "{g}");
    }
}

#[test]
fn incomplete_table_is_reported() {
    let t = DelTable::Entries { name: "partial".into(), values: BTreeMap::from([("C4".to_string(), AbGroup::free(1))]) };
    assert_eq!(obs_rhetorical(&ctx("D8"), 2, &t).unwrap_err(), Error::TableIncomplete("C2".into()));
    assert!(obs_rhetorical(&ctx("C2^2"), 2, &t).unwrap().obs.is_zero());
}

#[test]
fn table_specs() {
    assert_eq!(DelTable::parse("dt").unwrap(), DelTable::dade_torsion_odd());
    assert_eq!(DelTable::parse("dt2").unwrap(), DelTable::DadeTorsionTwo);
    assert_eq!(DelTable::parse("rq").unwrap().constant_value(), Some(&AbGroup::free(1)));
    assert_eq!(DelTable::parse("const:Z/2 + Z").unwrap().constant_value(), Some(&AbGroup::from_cyclic_orders(&[0, 2])));
    assert!(DelTable::parse("nonsense").is_err());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let t = DelTable::Entries {
        name: "mine".into(),
        values: BTreeMap::from([("C2".to_string(), AbGroup::cyclic(3)), ("Q8".to_string(), AbGroup::zero())]),
    };
    std::fs::write(&path, serde_json::to_string(&t).unwrap()).unwrap();
    let back = DelTable::parse(path.to_str().unwrap()).unwrap();
    assert_eq!(back, t);
    assert_eq!(obs_rhetorical(&ctx("D16"), 2, &back).unwrap().obs, AbGroup::cyclic(3));
}

#[test]
fn named_formulas() {
    let xs = ctx("XS(3,+)");
    assert_eq!(obs_dt_odd(&xs, 3).unwrap(), AbGroup::from_cyclic_orders(&[2, 2, 2]));
    assert!(obs_dade_odd(&xs, 3).unwrap().is_zero());
    assert!(obs_df_odd(&xs, 3).unwrap().is_zero());
    assert!(obs_dt_odd(&ctx("C3^2"), 3).unwrap().is_zero());
    assert!(obs_dt_odd(&ctx("C3^3"), 3).unwrap().is_zero());
    assert!(obs_dt_odd(&ctx("D8"), 2).is_err());
    assert_eq!(obs_rq_dual(&ctx("D8"), 2).unwrap(), AbGroup::free(1));
    assert!(matches!(obs_rq_dual(&ctx("Q8"), 2), Err(Error::RankTooSmall { .. })));
}

#[test]
fn formulas_over_the_corpus() {
    for g in corpus(32) {
        let c = ctx(&g);
        let p = c.prime().unwrap();
        assert_eq!(h1_orbit(&c, p, Coeff::Z), h1_invariant_cocycles(&c, p), "{g}");
        if c.p_rank(p) < 2 {
            continue;
        }
        for a in [AbGroup::free(1), AbGroup::cyclic(2), AbGroup::cyclic(p as u64)] {
            let r = obs_rhetorical(&c, p, &DelTable::constant(a.clone())).unwrap();
            assert!(r.consistent(), "{g} {a}: {} vs {:?}", r.obs, r.orbit_h0);
        }
        if c.center_rank(p) >= 2 {
            assert!(obs_rq_dual(&c, p).unwrap().is_zero(), "{g}");
            assert!(obs_rhetorical(&c, p, &DelTable::DadeTorsionTwo).unwrap().obs.is_zero(), "{g}");
        }
        if p > 2 {
            assert_eq!(obs_dt_odd(&c, p).unwrap(), obs_rhetorical(&c, p, &DelTable::dade_torsion_odd()).unwrap().obs, "{g}");
        }
    }
}

fn crown(k: usize) -> gluing::sections::OrderComplex {
    // minima 0..k, maxima k..2k; maximum k+i lies over minima i and i+1
    order_complex(2 * k, |a, b| a == b || (a < k && b >= k && (b - k == a || (b - k + 1) % k == a)), &[])
}

#[test]
fn mod2_kernel_on_a_circle() {
    let circle = orbit_cochain_complex(&crown(3));
    assert_eq!(circle.cohomology(1, Coeff::Z), AbGroup::free(1));
    assert_eq!(circle.cohomology(1, Coeff::Zmod(2)), AbGroup::cyclic(2));
    assert_eq!(mod2_kernel_on_h1(&circle), AbGroup::free(1));
    let points = orbit_cochain_complex(&order_complex(2, |a, b| a == b, &[]));
    assert!(mod2_kernel_on_h1(&points).is_zero());
}

#[test]
fn cross_validation_of_burnside_dual() {
    let bd = BurnsideDual::new();
    let c = ctx("D8");
    let r = cross_validate(&c, 2, CrossInput::Functor(&bd), &[Route::Direct, Route::Bar, Route::Oliver], &CrossOptions::default());
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.limit_iso, Some(true));
    for route in [Route::Direct, Route::Bar, Route::Oliver] {
        let x = r.route(route).unwrap();
        assert_eq!(x.at(-1), Some(&AbGroup::free(1)));
        assert_eq!(x.at(0), Some(&AbGroup::zero()));
    }
    let c = ctx("C2^2");
    let r = cross_validate(&c, 2, CrossInput::Functor(&bd), &[Route::Direct, Route::Bar], &CrossOptions::default());
    assert!(r.passed());
    assert_eq!(r.route(Route::Bar).unwrap().at(-1), Some(&AbGroup::free(1)));
}

#[test]
fn cross_validation_of_a_table() {
    let c = ctx("XS(3,+)");
    let t = DelTable::constant(AbGroup::cyclic(2));
    let r = cross_validate(&c, 3, CrossInput::Table(&t), &[Route::Formula, Route::Orbit], &CrossOptions::default());
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.route(Route::Orbit).unwrap().at(0), Some(&AbGroup::from_cyclic_orders(&[2, 2, 2])));
    assert!(r.b_choice.is_some() && r.caveat.is_none());
    let d8 = ctx("D8");
    let r = cross_validate(&d8, 2, CrossInput::Table(&DelTable::rational_dual()), &[Route::Formula, Route::Orbit], &CrossOptions::default());
    assert!(r.passed() && r.caveat.is_some());
}

#[test]
fn inapplicable_routes_are_reported() {
    let c = ctx("C4");
    let t = DelTable::DadeTorsionTwo;
    let r = cross_validate(&c, 2, CrossInput::Table(&t), &[Route::Direct, Route::Orbit], &CrossOptions::default());
    assert!(!r.passed());
    assert!(r.routes.iter().all(|x| x.error.is_some()));
    assert_eq!(r.witnesses.len(), 2);
}

#[test]
fn reports_are_deterministic() {
    let c = ctx("D8");
    let bd = BurnsideDual::new();
    let routes = [Route::Direct, Route::Bar, Route::Oliver];
    let a = serde_json::to_string_pretty(&cross_validate(&c, 2, CrossInput::Functor(&bd), &routes, &CrossOptions::default())).unwrap();
    let b = serde_json::to_string_pretty(&cross_validate(&c, 2, CrossInput::Functor(&bd), &routes, &CrossOptions::default())).unwrap();
    assert_eq!(a, b);
    assert!(!a.contains("millis"));
}

/// Rank of H¹ of a graph: edges − vertices + components.
fn graph_h1_rank(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut uf = UnionFind::<usize>::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    let comps = (0..n).filter(|&v| uf.find(v) == v).count();
    edges.len() + comps - n
}

proptest! {
    #[test]
    fn bipartite_posets_have_graph_cohomology(lo in 1usize..5, hi in 1usize..5, bits in prop::collection::vec(any::<bool>(), 16)) {
        let n = lo + hi;
        let rel = |a: usize, b: usize| a < lo && b >= lo && bits[a * 4 + (b - lo)];
        let x = order_complex(n, |a, b| a == b || rel(a, b), &[]);
        let edges: Vec<(usize, usize)> = (0..lo).flat_map(|a| (lo..n).map(move |b| (a, b))).filter(|&(a, b)| rel(a, b)).collect();
        let r = graph_h1_rank(n, &edges);
        let c = orbit_cochain_complex(&x);
        let h1 = if c.end() >= 1 { c.cohomology(1, Coeff::Z) } else { AbGroup::zero() };
        prop_assert_eq!(&h1, &AbGroup::free(r));
        prop_assert_eq!(mod2_kernel_on_h1(&c), AbGroup::free(r));
        prop_assert_eq!(gluing::sections::h1_invariant_cocycles(&x), AbGroup::free(r));
    }
}
