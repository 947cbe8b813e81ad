use gluing::functor::*;
use gluing::group::{corpus, GroupCtx};
use gluing::homalg::{AbGroup, Coeff, CochainComplex};
use gluing::obstruction::*;
use gluing::oliver::{oliver_complex, OliverOptions};
use gluing::sections::{check_reduction_hypothesis, order_complex, orbit_cochain_complex, Collection, Section};
use num_bigint::BigInt;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const RANK_CAP: usize = 4;
/// Bar complexes through degree 2 are only built below this order; the Steinberg route covers the rest.
const BAR_DEGREE_TWO_BELOW: usize = 32;

type Outcome = Result<String, Vec<String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn ctx(spec: &str) -> GroupCtx {
    GroupCtx::from_spec(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn prime(c: &GroupCtx) -> usize {
    c.prime().expect("corpus groups are p-groups")
}

/// Runs `check` on every group in parallel and gathers the failure messages.
fn over_groups(groups: &[String], check: impl Fn(&GroupCtx, &mut Vec<String>) -> gluing::error::Result<()> + Sync) -> Outcome {
    let failures: Vec<String> = groups
        .par_iter()
        .flat_map_iter(|g| {
            let c = ctx(g);
            let mut f = Vec::new();
            if let Err(e) = check(&c, &mut f) {
                f.push(format!("{g}: {e}"));
            }
            f
        })
        .collect();
    if failures.is_empty() {
        Ok(format!("{} groups", groups.len()))
    } else {
        Err(failures)
    }
}

fn expect<T: PartialEq + std::fmt::Display>(failures: &mut Vec<String>, what: impl FnOnce() -> String, got: &T, want: &T) {
    if got != want {
        failures.push(format!("{}: got {got}, expected {want}", what()));
    }
}

fn builtins(c: &GroupCtx) -> Vec<Box<dyn Functor>> {
    vec![Box::new(Constant::integers()), Box::new(BurnsideDual::new()), Box::new(Atomic::new(c, default_atomic_section(c), 0))]
}

/// Constant 𝔽_p is constant ℤ read with ℤ/p coefficients.
fn functor_cases(c: &GroupCtx) -> Vec<(Box<dyn Functor>, Coeff)> {
    let p = prime(c) as u64;
    let mut out: Vec<(Box<dyn Functor>, Coeff)> = vec![(Box::new(Constant::integers()), Coeff::Zmod(p))];
    out.extend(builtins(c).into_iter().map(|f| (f, Coeff::Z)));
    out
}

fn value(f: &dyn Functor, c: &GroupCtx, s: Section) -> AbGroup {
    AbGroup::from_cyclic_orders(&f.value(c, s))
}

fn dihedral_shape() -> Outcome {
    let start = Instant::now();
    let c = ctx("D8");
    let l = &c.lattice;
    let (g, one) = (l.whole(), l.trivial());
    let z = l.id_of(&c.group.center()).unwrap();
    let noncentral: Vec<usize> = l.class_reps().filter(|&q| l.order(q) == 2 && q != z).collect();
    let klein: Vec<usize> = noncentral.iter().map(|&q| l.centralizer(q)).collect();
    let rank_one: BTreeSet<Section> =
        std::iter::once(Section::new(g, z)).chain(noncentral.iter().zip(&klein).map(|(&q, &e)| Section::new(e, q))).collect();
    let rank_two: BTreeSet<Section> = klein.iter().map(|&e| Section::new(e, e)).collect();
    let mut failures = Vec::new();
    if noncentral.len() != 2 || klein.iter().any(|&e| l.order(e) != 4) {
        failures.push(format!("unexpected non-central involution classes {noncentral:?}"));
    }
    let mut bdual_ranks = Vec::new();
    for f in [&BurnsideDual::new() as &dyn Functor, &Constant::integers(), &Constant::new(2)] {
        let o = oliver_complex(f, &c, OliverOptions { rank_cap: RANK_CAP }).map_err(|e| vec![e.to_string()])?;
        let sections: Vec<BTreeSet<Section>> = o.terms.iter().map(|ts| ts.iter().map(|t| t.section).collect()).collect();
        let want = vec![BTreeSet::from([Section::new(g, one)]), rank_one.clone(), rank_two.clone()];
        if sections != want {
            failures.push(format!("{}: term sections {sections:?}, expected {want:?}", f.name()));
        }
        for t in o.terms.iter().take(2).flatten() {
            expect(&mut failures, || format!("{} summand at {}", f.name(), t.section), &t.hom.group, &value(f, &c, t.section));
        }
        if f.name() == "bdual" {
            bdual_ranks = o.term_groups().iter().map(|a| a.free_rank).collect();
        }
    }
    expect(&mut failures, || "Burnside dual ranks".into(), &format!("{bdual_ranks:?}"), &"[8, 9, 2]".to_string());
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(1) {
        failures.push(format!("took {elapsed:?}"));
    }
    if failures.is_empty() {
        Ok(format!("ranks 8 -> 9 -> 2 in {elapsed:?}"))
    } else {
        Err(failures)
    }
}

fn burnside_dual_glues() -> Outcome {
    over_groups(&corpus(64), |c, fail| {
        let got = obs_direct(&BurnsideDual::new(), c, Coeff::Z)?;
        expect(fail, || format!("{} (kernel, obstruction)", c.label()), &format!("{got:?}"), &format!("{:?}", (AbGroup::free(1), AbGroup::zero())));
        Ok(())
    })
}

fn cyclic_groups() -> Outcome {
    let mut specs = Vec::new();
    for p in [2usize, 3, 5] {
        for n in 1..=3 {
            specs.push(format!("C{}", p.pow(n)));
        }
    }
    over_groups(&specs, |c, fail| {
        let start = Instant::now();
        let bd = BurnsideDual::new();
        let (k, o) = obs_direct(&bd, c, Coeff::Z)?;
        expect(fail, || format!("{} obstruction", c.label()), &o, &AbGroup::zero());
        expect(fail, || format!("{} kernel", c.label()), &k, &AbGroup::free(1));
        let (_, gens) = direct_complex(&bd, c, true)?.cohomology_generators(-1, Coeff::Z);
        let basis = bd.basis(c, Section::new(c.lattice.whole(), c.lattice.trivial()));
        let mut e1 = vec![BigInt::from(0); basis.len()];
        e1[basis.binary_search(&c.lattice.trivial()).unwrap()] = BigInt::from(1);
        let neg: Vec<BigInt> = e1.iter().map(|x| -x).collect();
        if gens.len() != 1 || (gens[0] != e1 && gens[0] != neg) {
            fail.push(format!("{}: kernel generators {gens:?}, expected ±{e1:?}", c.label()));
        }
        if start.elapsed() > Duration::from_secs(1) {
            fail.push(format!("{}: took {:?}", c.label(), start.elapsed()));
        }
        Ok(())
    })
}

fn route_agreement() -> Outcome {
    over_groups(&corpus(32), |c, fail| {
        for (f, coeff) in functor_cases(c) {
            let f = f.as_ref();
            let name = || format!("{} {} {coeff}", c.label(), f.name());
            let (k, o) = obs_direct(f, c, coeff)?;
            let bar = reduced_cohomology(f, c, Collection::Proper, 1, coeff, DEFAULT_CHAIN_CAP)?;
            let oliver = oliver_complex(f, c, OliverOptions { rank_cap: RANK_CAP })?;
            let degrees: Vec<i32> = bar.iter().map(|(n, _)| *n).collect();
            expect(fail, || format!("{} bar degrees", name()), &format!("{degrees:?}"), &"[-1, 0, 1]".to_string());
            expect(fail, || format!("{} degree -1 direct/bar", name()), &k, &bar[0].1);
            expect(fail, || format!("{} degree 0 direct/bar", name()), &o, &bar[1].1);
            for (n, h) in &bar {
                expect(fail, || format!("{} degree {n} bar/oliver", name()), h, &oliver.cohomology(*n, coeff)?);
            }
        }
        Ok(())
    })
}

fn reduction_invariance() -> Outcome {
    over_groups(&corpus(32), |c, fail| {
        let p = prime(c);
        for (f, coeff) in functor_cases(c) {
            let f = f.as_ref();
            let base = reduced_cohomology(f, c, Collection::Proper, 1, coeff, DEFAULT_CHAIN_CAP)?;
            for coll in [Collection::E(p), Collection::C(p)] {
                let other = reduced_cohomology(f, c, coll, 1, coeff, DEFAULT_CHAIN_CAP)?;
                for ((n, a), (_, b)) in base.iter().zip(&other) {
                    expect(fail, || format!("{} {} {coeff} degree {n} proper/{coll}", c.label(), f.name()), b, a);
                }
            }
        }
        for (sub, sup) in [(Collection::E(p), Collection::Proper), (Collection::C(p), Collection::E(p))] {
            let r = check_reduction_hypothesis(c, sub, sup)?;
            fail.extend(r.failures.iter().map(|x| format!("{} {sub} in {sup}: {x}", c.label())));
        }
        Ok(())
    })
}

fn vanishing_above_rank() -> Outcome {
    over_groups(&corpus(32), |c, fail| {
        let p = prime(c);
        let rk = c.p_rank(p) as i32;
        for f in [&BurnsideDual::new() as &dyn Functor, &Constant::integers()] {
            let o = oliver_complex(f, c, OliverOptions { rank_cap: RANK_CAP })?;
            for coeff in [Coeff::Zmod(p as u64), Coeff::Q] {
                for n in rk..=rk + 1 {
                    expect(fail, || format!("{} {} {coeff} Steinberg degree {n}", c.label(), f.name()), &o.cohomology(n, coeff)?, &AbGroup::zero());
                }
                // the bar complex knows nothing of the rank
                if rk <= 2 && c.order() < BAR_DEGREE_TWO_BELOW {
                    let bar = reduced_cohomology(f, c, Collection::Proper, 2, coeff, DEFAULT_CHAIN_CAP)?;
                    for (n, h) in bar.iter().filter(|(n, _)| *n >= rk) {
                        expect(fail, || format!("{} {} {coeff} bar degree {n}", c.label(), f.name()), h, &AbGroup::zero());
                    }
                }
            }
        }
        Ok(())
    })
}

fn constant_vanishing() -> Outcome {
    over_groups(&corpus(32), |c, fail| {
        let p = prime(c);
        let f = Constant::integers();
        let o = oliver_complex(&f, c, OliverOptions { rank_cap: RANK_CAP })?;
        let top = if c.order() < BAR_DEGREE_TWO_BELOW { 2 } else { 1 };
        for coeff in [Coeff::Q, Coeff::Zmod(p as u64)] {
            let bar = reduced_cohomology(&f, c, Collection::Proper, top, coeff, DEFAULT_CHAIN_CAP)?;
            for (n, h) in &bar {
                expect(fail, || format!("{} {coeff} bar degree {n}", c.label()), h, &AbGroup::zero());
            }
            for n in -1..=2 {
                expect(fail, || format!("{} {coeff} Steinberg degree {n}", c.label()), &o.cohomology(n, coeff)?, &AbGroup::zero());
            }
        }
        Ok(())
    })
}

fn elementary_abelian() -> Outcome {
    let specs: Vec<String> = ["C2^2", "C2^3", "C3^2", "C3^3"].map(String::from).to_vec();
    over_groups(&specs, |c, fail| {
        let whole = Section::new(c.lattice.whole(), c.lattice.trivial());
        for f in builtins(c) {
            let f = f.as_ref();
            let (k, o) = obs_direct(f, c, Coeff::Z)?;
            expect(fail, || format!("{} {} obstruction", c.label(), f.name()), &o, &AbGroup::zero());
            expect(fail, || format!("{} {} kernel", c.label(), f.name()), &k, &faithful_part(f, c, whole, Coeff::Z)?);
        }
        Ok(())
    })
}

/// `H̃⁰(A_≥2(G)/G; A) = A^{c−1}` where `c` counts G-orbits of connected components.
fn orbit_h0_oracle(c: &GroupCtx, p: usize, a: &AbGroup) -> AbGroup {
    let l = &c.lattice;
    let verts: Vec<usize> = l.elementary_abelian(&c.group, p, false).into_iter().filter(|&e| l.log_order(e, p) >= 2).collect();
    let index = |e: usize| verts.binary_search(&e).unwrap();
    let mut uf = UnionFind::<usize>::new(verts.len());
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate() {
            if l.leq(a, b) {
                uf.union(i, j);
            }
        }
        for &g in c.group.generators() {
            uf.union(i, index(l.conj(a, g)));
        }
    }
    let classes = uf.into_labeling().into_iter().collect::<BTreeSet<_>>().len();
    AbGroup::sum_all(std::iter::repeat_n(a, classes.saturating_sub(1)))
}

fn rhetorical_formula() -> Outcome {
    let mut failures = Vec::new();
    let d8 = obs_rhetorical(&ctx("D8"), 2, &DelTable::constant(AbGroup::free(1))).map_err(|e| vec![e.to_string()])?;
    expect(&mut failures, || "D8 with Z".into(), &d8.obs, &AbGroup::free(1));
    let xs = obs_rhetorical(&ctx("XS(3,+)"), 3, &DelTable::constant(AbGroup::cyclic(2))).map_err(|e| vec![e.to_string()])?;
    expect(&mut failures, || "XS(3,+) with Z/2".into(), &xs.obs, &AbGroup::from_cyclic_orders(&[2, 2, 2]));
    let sweep = over_groups(&corpus(64), |c, fail| {
        let p = prime(c);
        if c.p_rank(p) < 2 {
            return Ok(());
        }
        let central = c.center_rank(p) >= 2;
        for a in [AbGroup::free(1), AbGroup::cyclic(2), AbGroup::cyclic(p as u64), AbGroup::from_cyclic_orders(&[0, 4])] {
            let got = obs_rhetorical(c, p, &DelTable::constant(a.clone()))?.obs;
            expect(fail, || format!("{} constant {a} vs orbit space", c.label()), &got, &orbit_h0_oracle(c, p, &a));
            if central {
                expect(fail, || format!("{} constant {a} with central rank 2", c.label()), &got, &AbGroup::zero());
            }
        }
        if central {
            let dade = if p == 2 { DelTable::DadeTorsionTwo } else { DelTable::dade_torsion_odd() };
            for t in [DelTable::rational_dual(), dade] {
                expect(fail, || format!("{} table {t} with central rank 2", c.label()), &obs_rhetorical(c, p, &t)?.obs, &AbGroup::zero());
            }
        }
        Ok(())
    });
    match sweep {
        Ok(msg) if failures.is_empty() => Ok(format!("{msg}, D8 gives Z, XS(3,+) gives (Z/2)^3")),
        Ok(_) => Err(failures),
        Err(more) => Err(failures.into_iter().chain(more).collect()),
    }
}

fn invariant_cocycles() -> Outcome {
    over_groups(&corpus(64), |c, fail| {
        let p = prime(c);
        expect(fail, || format!("{} H1", c.label()), &h1_invariant_cocycles(c, p), &h1_orbit(c, p, Coeff::Z));
        Ok(())
    })
}

/// Barycentric subdivision of a hexagon: six vertices and six edges forming one loop.
fn circle() -> CochainComplex {
    let n = 6;
    let x = order_complex(2 * n, |a, b| a == b || (a < n && b >= n && (b - n == a || (b - n + 1) % n == a)), &[]);
    orbit_cochain_complex(&x)
}

fn dade_kernel() -> Outcome {
    let mut failures = Vec::new();
    let c = circle();
    expect(&mut failures, || "circle H1".into(), &c.cohomology(1, Coeff::Z), &AbGroup::free(1));
    expect(&mut failures, || "circle mod 2 kernel".into(), &mod2_kernel_on_h1(&c), &AbGroup::free(1));
    let sweep = over_groups(&corpus(64), |c, fail| {
        let p = prime(c);
        if h1_orbit(c, p, Coeff::Z).is_zero() {
            expect(fail, || format!("{} mod 2 kernel", c.label()), &mod2_kernel_on_h1(&a_geq2_orbit_complex(c, p)), &AbGroup::zero());
        }
        Ok(())
    });
    match sweep {
        Ok(msg) if failures.is_empty() => Ok(format!("circle kernel Z, {msg} swept")),
        Ok(_) => Err(failures),
        Err(more) => Err(failures.into_iter().chain(more).collect()),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("dihedral Steinberg complex shape", dihedral_shape),
        ("Burnside dual glues uniquely up to Z", burnside_dual_glues),
        ("cyclic groups", cyclic_groups),
        ("direct, bar and Steinberg routes agree", route_agreement),
        ("proper, e and c collections agree", reduction_invariance),
        ("vanishing at and above the p-rank", vanishing_above_rank),
        ("constant coefficients vanish through degree 2", constant_vanishing),
        ("elementary abelian groups", elementary_abelian),
        ("central rank and orbit-space formula", rhetorical_formula),
        ("invariant cocycles compute orbit H1", invariant_cocycles),
        ("mod 2 kernel on H1", dade_kernel),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}; {:.1}s)", i + 1, elapsed.as_secs_f64()),
            Err(failures) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({} failures; {:.1}s)", i + 1, failures.len(), elapsed.as_secs_f64());
                for f in failures.iter().take(10) {
                    println!("       {f}");
                }
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
