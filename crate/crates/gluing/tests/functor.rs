use gluing::functor::*;
use gluing::group::{catalog, GroupCtx};
use gluing::homalg::{AbGroup, Coeff, IntMatrix};
use gluing::sections::{orbit_category, Collection, Section};
use num_bigint::BigInt;

fn ctx(spec: &str) -> GroupCtx {
    GroupCtx::new(catalog(spec).unwrap()).unwrap()
}

fn builtins(c: &GroupCtx) -> Vec<Box<dyn Functor>> {
    let atomic = Atomic::new(c, default_atomic_section(c), 0);
    vec![Box::new(Constant::integers()), Box::new(BurnsideDual::new()), Box::new(atomic)]
}

fn whole(c: &GroupCtx) -> Section {
    Section::new(c.lattice.whole(), c.lattice.trivial())
}

#[test]
fn burnside_dual_values() {
    let bd = BurnsideDual::new();
    let c = ctx("D8");
    assert_eq!(bd.value(&c, whole(&c)).len(), 8);
    for p in ["C2", "C3", "C5"] {
        let c = ctx(p);
        assert_eq!(bd.value(&c, whole(&c)), vec![0, 0]);
    }
}

#[test]
fn builtins_validate() {
    for g in ["C4", "C2^2", "D8", "Q8", "C3^2"] {
        let c = ctx(g);
        let mut fs = builtins(&c);
        fs.push(Box::new(Constant::new(2)));
        for f in &fs {
            let f = f.as_ref();
            let r = validate_functor(f, &c, Collection::All).unwrap();
            assert!(r.passed(), "{g} {}: {:?}", f.name(), r.violations);
            assert!(r.checked > 0);
        }
    }
}

#[test]
fn corrupted_table_fails_validation() {
    let c = ctx("C2^2");
    let table = TableFunctor::tabulate(&BurnsideDual::new(), &c, Collection::All).unwrap();
    let mut file = table.to_file(&c, Collection::All).unwrap();
    let entry = file.maps.iter_mut().find(|m| m.kind == "des" && !m.matrix.is_empty()).unwrap();
    entry.matrix[0][0] += 1;
    let broken = TableFunctor::from_file(&file, &c).unwrap();
    let r = validate_functor(&broken, &c, Collection::All).unwrap();
    assert!(!r.passed());
}

#[test]
fn table_file_round_trip() {
    let c = ctx("D8");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bdual.json");
    save_functor(&BurnsideDual::new(), &c, Collection::All, &path).unwrap();
    let loaded = load_functor(&path, &c).unwrap();
    assert!(validate_functor(&loaded, &c, Collection::All).unwrap().passed());
    let again = TableFunctor::tabulate(&loaded, &c, Collection::All).unwrap().to_file(&c, Collection::All).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let first: FunctorFile = serde_json::from_str(&text).unwrap();
    assert_eq!(first, again);
    let bd = BurnsideDual::new();
    assert_eq!(obs_direct(&loaded, &c, Coeff::Z).unwrap(), obs_direct(&bd, &c, Coeff::Z).unwrap());
}

#[test]
fn incomplete_table_is_rejected() {
    let c = ctx("C4");
    let mut file = TableFunctor::tabulate(&Constant::integers(), &c, Collection::All).unwrap().to_file(&c, Collection::All).unwrap();
    file.maps.retain(|m| m.kind != "des");
    assert!(TableFunctor::from_file(&file, &c).is_err());
}

#[test]
fn gluing_limits_of_burnside_dual() {
    let bd = BurnsideDual::new();
    let c = ctx("C2^2");
    let lim = gluing_limit(&bd, &c, Coeff::Z).unwrap();
    assert_eq!(lim.group, AbGroup::free(4));
    // the G-block of each generator is the value at G/G, which every C_i block also sees
    let g = c.lattice.whole();
    for v in &lim.generators {
        let top = lim.component(v, g)[0].clone();
        for &h in lim.reps.iter().filter(|&&h| h != g) {
            let comp = lim.component(v, h);
            assert_eq!(comp.len(), 2);
            assert!(comp.contains(&top));
        }
    }
    assert_eq!(gluing_limit(&bd, &ctx("C9"), Coeff::Z).unwrap().group, AbGroup::free(2));
}

#[test]
fn burnside_dual_obstruction_vanishes() {
    let bd = BurnsideDual::new();
    for g in ["C2^2", "D8", "C4", "Q8", "C3^2"] {
        let c = ctx(g);
        assert_eq!(obs_direct(&bd, &c, Coeff::Z).unwrap(), (AbGroup::free(1), AbGroup::zero()), "{g}");
    }
}

#[test]
fn detection_kernel_is_trivial_subgroup_indicator() {
    let bd = BurnsideDual::new();
    for g in ["C2", "C4", "C8", "C9"] {
        let c = ctx(g);
        let (k, gens) = direct_complex(&bd, &c, true).unwrap().cohomology_generators(-1, Coeff::Z);
        assert_eq!(k, AbGroup::free(1));
        let basis = bd.basis(&c, whole(&c));
        let mut e1 = vec![BigInt::from(0); basis.len()];
        e1[basis.binary_search(&c.lattice.trivial()).unwrap()] = BigInt::from(1);
        let neg: Vec<BigInt> = e1.iter().map(|x| -x).collect();
        assert!(gens[0] == e1 || gens[0] == neg, "{g}");
    }
}

#[test]
fn detection_map_matches_direct_obstruction() {
    let c = ctx("D8");
    let bd = BurnsideDual::new();
    let m = detection_map(&bd, &c, Coeff::Z).unwrap();
    assert!(m.is_well_defined());
    assert_eq!((m.kernel(), m.cokernel()), obs_direct(&bd, &c, Coeff::Z).unwrap());
    let atomic = Atomic::new(&c, whole(&c), 2);
    let m = detection_map(&atomic, &c, Coeff::Z).unwrap();
    assert_eq!(m.kernel(), AbGroup::cyclic(2));
}

#[test]
fn faithful_parts() {
    let bd = BurnsideDual::new();
    let c = ctx("C2^2");
    assert_eq!(faithful_part(&bd, &c, whole(&c), Coeff::Z).unwrap(), AbGroup::free(1));
    for p in ["C2", "C3", "C7"] {
        let c = ctx(p);
        assert_eq!(faithful_part(&bd, &c, whole(&c), Coeff::Z).unwrap(), AbGroup::free(1));
    }
    for g in ["C4", "D8", "C3^2"] {
        let c = ctx(g);
        assert_eq!(faithful_part(&Constant::integers(), &c, whole(&c), Coeff::Z).unwrap(), AbGroup::zero());
    }
}

#[test]
fn elementary_abelian_kernel_is_faithful_part() {
    for g in ["C2", "C2^2", "C3^2", "C2^3"] {
        let c = ctx(g);
        for f in &builtins(&c) {
            let f = f.as_ref();
            let (k, obs) = obs_direct(f, &c, Coeff::Z).unwrap();
            assert!(obs.is_zero(), "{g} {}", f.name());
            assert_eq!(k, faithful_part(f, &c, whole(&c), Coeff::Z).unwrap(), "{g} {}", f.name());
        }
    }
}

#[test]
fn atomic_functor_off_the_whole_group_is_obstructed() {
    // supported at (C2, C2), so it has no inflations and gluing data at C2 is unconstrained
    let c = ctx("C2");
    let top = Atomic::new(&c, Section::new(1, 1), 0);
    assert_eq!(obs_direct(&top, &c, Coeff::Z).unwrap(), (AbGroup::zero(), AbGroup::free(1)));
}

#[test]
fn bar_cohomology_matches_direct_route() {
    for g in ["C4", "C2^2", "D8"] {
        let c = ctx(g);
        for f in &builtins(&c) {
            let f = f.as_ref();
            let red = reduced_cohomology(f, &c, Collection::Proper, 1, Coeff::Z, DEFAULT_CHAIN_CAP).unwrap();
            let (k, o) = obs_direct(f, &c, Coeff::Z).unwrap();
            assert_eq!(red[0], (-1, k), "{g} {}", f.name());
            assert_eq!(red[1], (0, o), "{g} {}", f.name());
            let cat = orbit_category(&c, Collection::Proper, true).unwrap();
            let lim = limit_over_category(f, &c, &cat, Coeff::Z).unwrap();
            assert_eq!(lim, gluing_limit(f, &c, Coeff::Z).unwrap().group);
        }
    }
}

#[test]
fn skeleton_and_full_category_agree() {
    let c = ctx("D8");
    let bd = BurnsideDual::new();
    let skel = orbit_category(&c, Collection::Proper, true).unwrap();
    let full = orbit_category(&c, Collection::Proper, false).unwrap();
    for n in 0..=1 {
        assert_eq!(
            category_cohomology(&bd, &c, &skel, n, Coeff::Z, DEFAULT_CHAIN_CAP).unwrap(),
            category_cohomology(&bd, &c, &full, n, Coeff::Z, DEFAULT_CHAIN_CAP).unwrap()
        );
    }
}

#[test]
fn bar_complex_squares_to_zero() {
    let c = ctx("D8");
    let cat = orbit_category(&c, Collection::Proper, true).unwrap();
    let atomic = Atomic::new(&c, Section::new(c.lattice.whole(), c.lattice.whole()), 3);
    let mut fs = builtins(&c);
    fs.push(Box::new(atomic));
    for f in &fs {
        let f = f.as_ref();
        let b = bar_complex(f, &c, &cat, BarOptions::new(2)).unwrap();
        b.check().unwrap();
    }
}

#[test]
fn chain_cap_is_enforced() {
    let c = ctx("D8");
    let cat = orbit_category(&c, Collection::Proper, true).unwrap();
    let opts = BarOptions { max_degree: 2, chain_cap: 10, augmented: false };
    assert!(matches!(bar_complex(&Constant::integers(), &c, &cat, opts), Err(gluing::error::Error::BarSizeBound { .. })));
}

#[test]
fn rational_constant_cohomology_vanishes() {
    let c = ctx("D8");
    let red = reduced_cohomology(&Constant::integers(), &c, Collection::Proper, 1, Coeff::Q, DEFAULT_CHAIN_CAP).unwrap();
    assert!(red.iter().all(|(_, g)| g.is_zero()), "{red:?}");
}

#[test]
fn limit_iso_holds_on_small_groups() {
    for g in ["C4", "C2^2", "D8", "Q8", "C3^2"] {
        let c = ctx(g);
        let mut fs = builtins(&c);
        fs.push(Box::new(Atomic::new(&c, default_atomic_section(&c), 2)));
        for f in &fs {
            let f = f.as_ref();
            let r = check_limit_iso(f, &c, DEFAULT_CHAIN_CAP).unwrap();
            assert!(r.passed(), "{g} {}: {r:?}", f.name());
        }
    }
}

#[test]
fn proper_table_lacks_the_whole_group() {
    let c = ctx("C4");
    let t = TableFunctor::tabulate(&Constant::integers(), &c, Collection::Proper).unwrap();
    assert!(matches!(obs_direct(&t, &c, Coeff::Z), Err(gluing::error::Error::CollectionTooSmall(_))));
    assert_eq!(gluing_limit(&t, &c, Coeff::Z).unwrap().group, AbGroup::free(1));
}

#[test]
fn htw_diagnostics() {
    let c = ctx("C2^2");
    let atomic = Atomic::new(&c, whole(&c), 0);
    let r = check_htw_sequences(&atomic, &c).unwrap();
    assert_eq!(r.len(), 1);
    assert!(r[0].central && !r[0].alpha_injective);
    let zero = Constant::new(1);
    assert!(check_htw_sequences(&zero, &c).unwrap().iter().all(HtwReport::exact));
    let d8 = ctx("D8");
    let reports = check_htw_sequences(&Constant::integers(), &d8).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| !r.central));
    assert!(check_htw_sequences(&Constant::integers(), &ctx("S3")).is_err());
}

#[test]
fn parse_functor_specs() {
    let c = ctx("D8");
    assert_eq!(parse_functor("constant", &c).unwrap().name(), "constant");
    assert_eq!(parse_functor("constant:Z/3", &c).unwrap().value(&c, whole(&c)), vec![3]);
    assert_eq!(parse_functor("bdual", &c).unwrap().name(), "bdual");
    let a = parse_functor("atomic:U=9/V=9", &c).unwrap();
    assert_eq!(a.value(&c, Section::new(9, 9)), vec![0]);
    assert!(parse_functor("atomic:U=1/V=9", &c).is_err());
    assert!(parse_functor("nonsense", &c).is_err());
    let m = IntMatrix::identity(1);
    assert_eq!(a.des(&c, Section::new(9, 9), Section::new(9, 9)), m);
}
