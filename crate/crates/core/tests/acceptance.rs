//! Acceptance report: one PASS/FAIL line per criterion. Every comparison is
//! exact (integer ranks, invariant factors and matrices; tolerance 0).

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_cohomology::abelian::{FGAbGroup, GroupStructure};
use poset_cohomology::coxeter::CoxeterSystem;
use poset_cohomology::fixtures;
use poset_cohomology::functor::{CondensedFailure, LimitMethod, DEFAULT_CHAIN_CAP};
use poset_cohomology::global::{self, GlobalViolation};
use poset_cohomology::linalg::IntMatrix;
use poset_cohomology::morse::{self, MorseError, MorseFunction};
use poset_cohomology::pipeline::{self, PipelineError};
use poset_cohomology::poset::GradedPoset;
use poset_cohomology::sequence::{FunctorSequence, SequenceError};
use poset_cohomology::simplex::{self, random_complex, FamilyViolation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn zmod(orders: &[i64]) -> GroupStructure {
    FGAbGroup::from_orders(orders).structure()
}

fn z(rank: usize) -> GroupStructure {
    GroupStructure::free(rank)
}

fn show(groups: &[GroupStructure]) -> String {
    groups.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn ac1() -> Outcome {
    let poset = fixtures::poset(fixtures::TORSION_TOWER_POSET);
    let f = fixtures::functor(&poset, fixtures::TORSION_TOWER_FUNCTOR);
    let lim = f.limit().map_err(|e| e.to_string())?.group.structure();
    ensure!(lim == zmod(&[2]), "lim F = {lim}");
    let step = f.shift_step(0).map_err(|e| e.to_string())?;
    ensure!(step.lim_piece.structure() == zmod(&[2]), "shift lim^1 F = {}", step.lim_piece.structure());
    let oracle = f.higher_limits_oracle(1, DEFAULT_CHAIN_CAP).map_err(|e| e.to_string())?;
    ensure!(oracle == vec![zmod(&[2]), zmod(&[2])], "oracle = ({})", show(&oracle));
    let report = step.g.is_n_condensed(1).map_err(|e| e.to_string())?;
    let mut witnesses: Vec<String> = report
        .violations
        .iter()
        .filter(|v| v.failure == CondensedFailure::KernelAbove && v.group == zmod(&[2]))
        .map(|v| v.object.clone())
        .collect();
    witnesses.sort();
    ensure!(witnesses == ["x2", "y2"], "Ker_G witnesses {witnesses:?}");
    Ok("lim F = Z/2, lim^1 F = Z/2 by shifting and by the oracle; G not 1-condensed, Ker_G = Z/2 at x2, y2".into())
}

fn ac2() -> Outcome {
    let poset = fixtures::poset(fixtures::SIGNED_LAYERS_POSET);
    let f = fixtures::functor(&poset, fixtures::SIGNED_LAYERS_FUNCTOR);
    let hl = f.higher_limits(2, DEFAULT_CHAIN_CAP).map_err(|e| e.to_string())?;
    ensure!(hl.groups == vec![z(1), z(0), z(4)], "higher limits ({})", show(&hl.groups));
    ensure!(hl.methods[1..].iter().all(|m| *m == LimitMethod::Shift), "methods {:?}", hl.methods);
    let oracle = f.higher_limits_oracle(2, DEFAULT_CHAIN_CAP).map_err(|e| e.to_string())?;
    ensure!(oracle == hl.groups, "oracle ({})", show(&oracle));
    let j = fixtures::local_family(&poset, fixtures::SIGNED_LAYERS_FAMILY);
    let seq = FunctorSequence::build_from(&f, j).map_err(|e| e.to_string())?;
    let id = |s: &str| poset.index_of(s).unwrap();
    let ad = IntMatrix::from_rows(&[vec![-1, 0], vec![-1, 1]], 2).unwrap();
    let ae = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]], 2).unwrap();
    ensure!(seq.arrow(1, id("a"), id("d")) == ad, "G(a->d) = {:?}", seq.arrow(1, id("a"), id("d")).to_rows());
    ensure!(seq.arrow(1, id("a"), id("e")) == ae, "G(a->e) = {:?}", seq.arrow(1, id("a"), id("e")).to_rows());
    Ok("lim = Z, lim^1 = 0, lim^2 = Z^4 (shift and oracle); G(a->d)(g,h) = (-g, h-g), G(a->e)(g,h) = (-h, g-h)".into())
}

fn ac3() -> Outcome {
    let poset = fixtures::poset(fixtures::RP2_POSET);
    let k = fixtures::global_family(&poset, fixtures::RP2_GLOBAL);
    let (_, j) = pipeline::simplex_like_family(&poset, None).map_err(|e| e.to_string())?;
    let r = pipeline::reduce(poset, j, &k).map_err(|e| e.to_string())?;
    ensure!(r.full.ranks == [3, 6, 4], "ranks {:?}", r.full.ranks);
    ensure!(r.violations.is_empty(), "violations {:?}", r.violations);
    ensure!(r.family_betti == [1, 1, 1], "b^K {:?}", r.family_betti);
    let reduced = r.reduced.as_ref().ok_or("no reduced complex")?;
    ensure!(reduced.omega(0).is_zero(), "Omega_0 = {:?}", reduced.omega(0).to_rows());
    let o1 = reduced.omega(1).to_rows();
    ensure!(o1 == [[2]] || o1 == [[-2]], "Omega_1 = {o1:?}");
    let expected = vec![z(1), z(0), zmod(&[2])];
    ensure!(r.full_cohomology.groups == expected, "full H* ({})", show(&r.full_cohomology.groups));
    let h = &r.reduced_cohomology.as_ref().unwrap().groups;
    ensure!(*h == expected, "reduced H* ({})", show(h));
    Ok("ranks (3, 6, 4), K global, b^K = (1, 1, 1), Omega_0 = 0, Omega_1 = ±2, H* = (Z, 0, Z/2) full and reduced"
        .into())
}

fn three_way(poset: &Arc<GradedPoset>) -> Result<(), String> {
    let (cert, j) = pipeline::simplex_like_family(poset, None).map_err(|e| e.to_string())?;
    let (_, _, a) = pipeline::sequence_cohomology(poset.clone(), j).map_err(|e| e.to_string())?;
    let b = pipeline::simplicial_cohomology(poset, &cert).map_err(|e| e.to_string())?;
    let c = pipeline::oracle_cohomology(poset.clone(), DEFAULT_CHAIN_CAP).map_err(|e| e.to_string())?;
    ensure!(
        a == b && b == c,
        "sequence ({}) simplicial ({}) oracle ({})",
        show(&a.groups),
        show(&b.groups),
        show(&c.groups)
    );
    Ok(())
}

fn simplex_like_fixtures() -> Vec<(String, Arc<GradedPoset>)> {
    let mut out: Vec<(String, Arc<GradedPoset>)> =
        fixtures::COMPLEXES.iter().map(|(n, t)| (n.to_string(), fixtures::complex_poset(t))).collect();
    out.push(("rp2".into(), fixtures::poset(fixtures::RP2_POSET)));
    for (name, text) in fixtures::MORSE {
        out.push((name.to_string(), fixtures::morse(text).build().unwrap().1.poset().clone()));
    }
    for (name, text) in fixtures::COXETER {
        let run = pipeline::coxeter_run(&fixtures::coxeter(text), 100_000).unwrap();
        out.push((name.to_string(), run.complex.poset));
    }
    out
}

fn random_posets() -> Vec<(String, Arc<GradedPoset>)> {
    (0..200u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (format!("random seed {seed}"), Arc::new(random_complex(&mut rng, 25, 3).face_poset()))
        })
        .collect()
}

fn ac4() -> Outcome {
    let randoms = random_posets();
    for (name, poset) in &randoms {
        ensure!(poset.len() <= 25 && poset.max_degree().unwrap_or(0) <= 3, "{name}: out of range");
        three_way(poset).map_err(|e| format!("{name}: {e}"))?;
    }
    let fixtures = simplex_like_fixtures();
    for (name, poset) in &fixtures {
        three_way(poset).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} random complexes and {} fixtures agree across all three methods", randoms.len(), fixtures.len()))
}

fn ac5() -> Outcome {
    let mut posets = simplex_like_fixtures();
    posets.extend(random_posets().into_iter().take(50));
    let mut runs = 0;
    for (name, poset) in &posets {
        let (_, j) = pipeline::simplex_like_family(poset, None).map_err(|e| e.to_string())?;
        let seq = FunctorSequence::build(poset.clone(), j.clone()).map_err(|e| format!("{name}: {e}"))?;
        let r = simplex::r_values(poset);
        for p in 0..poset.len() {
            for n in 0..=poset.degree(p) {
                ensure!(seq.rank(n, p) as i64 == r[p][n], "{name}: rank F_{n}({}) != R", poset.id(p));
            }
        }
        // Whole family: reduced complex equals the full one; Ω∘Ω = 0 is checked on construction
        let k = global::GlobalCoveringFamily::everything(poset);
        let red = pipeline::reduce(poset.clone(), j.clone(), &k).map_err(|e| format!("{name}: {e}"))?;
        red.full.check_dd().map_err(|e| format!("{name}: {e}"))?;
        ensure!(red.reduced.is_some(), "{name}: whole family rejected");
        ensure!(simplex::euler_check(poset, &r, &red.full_cohomology), "{name}: Euler identity");
        ensure!(red.inequalities.as_ref().unwrap().holds(), "{name}: inequalities");
        runs += 1;
        if poset.len() > 60 {
            continue;
        }
        for p0 in 0..poset.len() {
            let (sub, sub_j, k) = global::under_category_family(poset, &j, p0);
            let red = pipeline::reduce(sub, sub_j, &k).map_err(|e| format!("{name}: {e}"))?;
            ensure!(red.violations.is_empty(), "{name} under {}: {:?}", poset.id(p0), red.violations);
            let mut expected = vec![0; poset.degree(p0) + 1];
            expected[0] = 1;
            ensure!(red.family_betti == expected, "{name} under {}: b^K {:?}", poset.id(p0), red.family_betti);
            ensure!(red.inequalities.as_ref().unwrap().holds(), "{name}: inequalities");
            runs += 1;
        }
    }
    Ok(format!("{runs} valid families: d∘d = 0, Ω∘Ω = 0, rank F_n = R_n, Euler identity, inequalities, under-category b^K = (1, 0, ...)"))
}

fn morse_checks(name: &str, mf: MorseFunction) -> Result<pipeline::MorseRun, String> {
    let run = pipeline::morse_run(mf).map_err(|e| format!("{name}: {e}"))?;
    let c = &run.classification;
    ensure!(run.reduction.violations.is_empty(), "{name}: {:?}", run.reduction.violations);
    let counts: Vec<i64> = c.critical_counts().iter().map(|&x| x as i64).collect();
    ensure!(run.reduction.family_betti == counts, "{name}: b^K {:?} vs |C| {counts:?}", run.reduction.family_betti);
    for n in 1..c.d.len() {
        ensure!(c.e[n - 1].len() == c.d[n].len(), "{name}: |E_{}| != |D_{n}|", n - 1);
    }
    ensure!(run.reduction.reduced_cohomology.as_ref() == Some(&run.simplicial), "{name}: reduced != simplicial");
    Ok(run)
}

fn ac6() -> Outcome {
    let mut count = 0;
    for (name, text) in fixtures::MORSE {
        let (_, mf) = fixtures::morse(text).build().map_err(|e| e.to_string())?;
        morse_checks(name, mf)?;
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, poset) in simplex_like_fixtures().into_iter().chain(random_posets().into_iter().take(50)) {
        let run = morse_checks(&format!("{name} f = dim"), MorseFunction::dimension(poset.clone()))?;
        let reduced = run.reduction.reduced.as_ref().unwrap();
        ensure!(
            reduced.complex.ranks == run.reduction.full.ranks
                && reduced.complex.differentials == run.reduction.full.differentials,
            "{name}: f = dim does not reproduce the full complex"
        );
        let mf = morse::random_morse_function(&mut rng, poset, 0.8);
        morse_checks(&format!("{name} random"), mf)?;
        count += 2;
    }
    Ok(format!("{count} Morse functions: K global, b^K = |C|, |E_(n-1)| = |D_n|, reduced = simplicial; f = dim gives the full complex"))
}

fn ac7() -> Outcome {
    let mut systems: Vec<(String, CoxeterSystem)> = vec![
        ("A2".into(), CoxeterSystem::type_a(2)),
        ("A1xA1".into(), CoxeterSystem::commuting(2)),
        ("A3".into(), CoxeterSystem::type_a(3)),
        ("B3".into(), CoxeterSystem::type_b(3)),
    ];
    for m in 4..=8 {
        systems.push((format!("I2({m})"), CoxeterSystem::dihedral(m)));
    }
    for (name, system) in &systems {
        let run = pipeline::coxeter_run(system, 100_000).map_err(|e| format!("{name}: {e}"))?;
        let d = system.rank() - 1;
        ensure!(run.group_checks.all(), "{name}: {:?}", run.group_checks);
        ensure!(run.bijection_failures.is_empty(), "{name}: {:?}", run.bijection_failures);
        ensure!(run.reduction.violations.is_empty(), "{name}: {:?}", run.reduction.violations);
        let mut expected = vec![0i64; d + 1];
        expected[0] = 1;
        expected[d] = 1;
        ensure!(run.reduction.family_betti == expected, "{name}: b^K {:?}", run.reduction.family_betti);
        let sphere = pipeline::sphere_cohomology(d);
        ensure!(
            run.reduction.full_cohomology == sphere,
            "{name}: H* ({})",
            show(&run.reduction.full_cohomology.groups)
        );
        ensure!(run.reduction.reduced_cohomology.as_ref() == Some(&sphere), "{name}: reduced H*");
    }
    let names: Vec<&str> = systems.iter().map(|(n, _)| n.as_str()).collect();
    Ok(format!(
        "{}: K global, b^K = (1, 0, ..., 0, 1), H* = H*(S^(|S|-1)), coset counts and per-u bijections hold",
        names.join(", ")
    ))
}

fn ac8() -> Outcome {
    // Inadequate J: both endpoints in J_0 of an edge
    let poset = fixtures::complex_poset(fixtures::TRIANGLE_BOUNDARY);
    let (_, mut j) = pipeline::simplex_like_family(&poset, None).map_err(|e| e.to_string())?;
    let edge = poset.index_of("v0 v1").unwrap();
    j.sets[edge][0] = poset.up_set(edge).iter().copied().filter(|&q| poset.degree(q) == 0).collect();
    let err = FunctorSequence::build(poset.clone(), j).err().ok_or("inadequate J accepted")?;
    let SequenceError::Inadequate(FamilyViolation::RankEquation { object, n: 0, r: 1, sum: 2 }) = &err else {
        return Err(format!("unexpected rejection: {err}"));
    };
    ensure!(object == "v0 v1", "witness names `{object}`");
    let first = err.to_string();

    // RP² family without one top cell
    let rp2 = fixtures::poset(fixtures::RP2_POSET);
    let mut k = fixtures::global_family(&rp2, fixtures::RP2_GLOBAL);
    let removed = rp2.id(k.k[2].pop().unwrap()).to_string();
    let (_, j) = pipeline::simplex_like_family(&rp2, None).map_err(|e| e.to_string())?;
    let r = pipeline::reduce(rp2.clone(), j, &k).map_err(|e| e.to_string())?;
    let witness = r
        .violations
        .iter()
        .find_map(|v| match v {
            GlobalViolation::NotInjective { n: 2, kernel_element } => Some(kernel_element.clone()),
            _ => None,
        })
        .ok_or_else(|| format!("removal of {removed} accepted: {:?}", r.violations))?;
    ensure!(witness.iter().any(|(label, _)| label.contains(&removed)), "witness {witness:?} avoids {removed}");
    ensure!(r.reduced.is_none(), "reduced complex built from an invalid family");

    // Constant function on the triangle
    let (_, mf) = fixtures::morse(fixtures::TRIANGLE_CONSTANT_MORSE).build().map_err(|e| e.to_string())?;
    let Err(PipelineError::Morse(MorseError::NotMorse(v))) = pipeline::morse_run(mf) else {
        return Err("constant function accepted".into());
    };
    Ok(format!("[{first}] [K_2 without {removed}: injectivity fails in degree 2, kernel element {witness:?}] [{v}]"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("{name} PASS (exact): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{name} FAIL (exact): {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
