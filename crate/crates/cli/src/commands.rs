//! The subcommands. Each returns a JSON report or a [`Failure`].

use std::fs;
use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use poset_cohomology::coxeter;
use poset_cohomology::functor::CoefFunctor;
use poset_cohomology::global;
use poset_cohomology::io::{
    self, ComplexFile, CoxeterFile, FunctorFile, GlobalFamilyFile, InputError, InputKind, LocalFamilyFile, MorseFile,
    PosetFile,
};
use poset_cohomology::morse;
use poset_cohomology::pipeline;
use poset_cohomology::poset::{self, GradedPoset};
use poset_cohomology::sequence::FunctorSequence;
use poset_cohomology::simplex::{self, LocalCoveringFamily, SimplexCertificate};

use crate::report::{self, to_value};
use crate::{Failure, MethodArg, Outcome, SpaceArgs};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn input_failure(command: &str, e: InputError) -> Failure {
    match e {
        InputError::Parse(m) => Failure::Input(m),
        InputError::Invalid(m) => Failure::Semantic(report::error(command, m, Value::Null)),
    }
}

fn semantic(command: &str, e: impl ToString) -> Failure {
    Failure::Semantic(report::error(command, e, Value::Null))
}

fn parse<T: serde::de::DeserializeOwned>(command: &str, text: &str) -> Result<T, Failure> {
    io::parse(text).map_err(|e| input_failure(command, e))
}

/// A poset read from a poset, complex or Morse file.
struct Space {
    poset: Arc<GradedPoset>,
    kind: InputKind,
}

fn load_poset_file(command: &str, text: &str, shift: bool) -> Result<GradedPoset, Failure> {
    let mut data = parse::<PosetFile>(command, text)?.to_data();
    if shift {
        data.shift_degrees();
    }
    let validation = poset::validate(&data);
    if !validation.is_valid() {
        let first = validation.violations[0].to_string();
        return Err(Failure::Semantic(report::error(
            command,
            format!("not a graded poset: {first}"),
            to_value(&validation.violations),
        )));
    }
    GradedPoset::new(&data).map_err(|e| semantic(command, e))
}

fn load_space(command: &str, path: &Path, shift: bool) -> Result<Space, Failure> {
    let text = read(path)?;
    let kind = io::detect_kind(&text).map_err(|e| input_failure(command, e))?;
    let poset = match kind {
        InputKind::Poset => load_poset_file(command, &text, shift)?,
        InputKind::Complex => {
            parse::<ComplexFile>(command, &text)?.build().map_err(|e| input_failure(command, e))?.face_poset()
        }
        InputKind::Morse => {
            let file: MorseFile = parse(command, &text)?;
            file.build().map_err(|e| input_failure(command, e))?.0.face_poset()
        }
        other => {
            return Err(Failure::Input(format!(
                "{}: expected a poset, complex or Morse file, found {}",
                path.display(),
                to_value(&other)
            )))
        }
    };
    Ok(Space { poset: Arc::new(poset), kind })
}

fn input_summary(path: &Path, space: &Space) -> Value {
    json!({
        "path": path.display().to_string(),
        "kind": to_value(&space.kind),
        "poset": report::poset_summary(&space.poset),
    })
}

/// The local family from `--local-family`, or the standard family of a
/// simplex-like poset (with its certificate).
fn local_family(
    command: &str,
    poset: &GradedPoset,
    args: &SpaceArgs,
) -> Result<(Option<SimplexCertificate>, LocalCoveringFamily), Failure> {
    if let Some(path) = &args.local_family {
        let file: LocalFamilyFile = parse(command, &read(path)?)?;
        let j = file.build(poset).map_err(|e| input_failure(command, e))?;
        return Ok((None, j));
    }
    let (cert, j) =
        pipeline::simplex_like_family(poset, args.vertex_order.as_deref()).map_err(|e| semantic(command, e))?;
    Ok((Some(cert), j))
}

fn family_source(args: &SpaceArgs) -> &'static str {
    if args.local_family.is_some() {
        "file"
    } else {
        "simplex_like"
    }
}

pub fn validate(path: &Path, poset_path: Option<&Path>, args: &SpaceArgs) -> Result<Outcome, Failure> {
    const CMD: &str = "validate";
    let text = read(path)?;
    let kind = io::detect_kind(&text).map_err(|e| input_failure(CMD, e))?;
    let mut report =
        json!({ "command": CMD, "input": { "path": path.display().to_string(), "kind": to_value(&kind) } });
    let base_poset = || -> Result<Arc<GradedPoset>, Failure> {
        let p = poset_path.ok_or_else(|| Failure::Input(format!("{} needs --poset", to_value(&kind))))?;
        Ok(load_space(CMD, p, args.shift_degrees)?.poset)
    };
    let ok = match kind {
        InputKind::Poset | InputKind::Complex | InputKind::Morse => {
            let space = load_space(CMD, path, args.shift_degrees)?;
            report["input"] = input_summary(path, &space);
            report["simplex_like"] = match simplex::certify(&space.poset, args.vertex_order.as_deref()) {
                Ok(_) => json!({ "holds": true }),
                Err(e) => json!({ "holds": false, "reason": e.to_string() }),
            };
            if kind == InputKind::Morse {
                let (_, mf) = parse::<MorseFile>(CMD, &text)?.build().map_err(|e| input_failure(CMD, e))?;
                match morse::validate_morse(&mf) {
                    Ok(()) => {
                        report["morse"] = json!({ "holds": true });
                        true
                    }
                    Err(v) => {
                        report["morse"] = json!({ "holds": false, "witness": to_value(&v), "message": v.to_string() });
                        report["error"] = json!(format!("not a discrete Morse function: {v}"));
                        false
                    }
                }
            } else {
                true
            }
        }
        InputKind::Coxeter => {
            let system = parse::<CoxeterFile>(CMD, &text)?.build().map_err(|e| input_failure(CMD, e))?;
            report["rank"] = json!(system.rank());
            match coxeter::enumerate(&system, coxeter::max_cells()) {
                Ok(g) => report["order"] = json!(g.order()),
                Err(e) => report["enumeration"] = json!(e.to_string()),
            }
            true
        }
        InputKind::Functor => {
            let poset = base_poset()?;
            let f = parse::<FunctorFile>(CMD, &text)?.build(poset).map_err(|e| input_failure(CMD, e))?;
            report["free"] = json!(f.is_free());
            report["values"] = report::groups(&f.values().iter().map(|g| g.structure()).collect::<Vec<_>>());
            true
        }
        InputKind::LocalFamily => {
            let poset = base_poset()?;
            let j = parse::<LocalFamilyFile>(CMD, &text)?.build(&poset).map_err(|e| input_failure(CMD, e))?;
            let mut violations = simplex::check_local_family(&poset, &j);
            if violations.is_empty() {
                violations = simplex::check_adequate(&poset, &j, &simplex::r_values(&poset));
            }
            report["violations"] = to_value(&violations);
            if let Some(v) = violations.first() {
                report["error"] = json!(v.to_string());
            }
            violations.is_empty()
        }
        InputKind::GlobalFamily => {
            let poset = base_poset()?;
            let k = parse::<GlobalFamilyFile>(CMD, &text)?.build(&poset).map_err(|e| input_failure(CMD, e))?;
            let (_, j) = local_family(CMD, &poset, args)?;
            let r = pipeline::reduce(poset.clone(), j, &k).map_err(|e| semantic(CMD, e))?;
            report["family"] = report::global_family(&poset, &k, &r.violations, &r.family_betti);
            if let Some(v) = r.violations.first() {
                report["error"] = json!(v.to_string());
            }
            r.violations.is_empty()
        }
    };
    report["status"] = json!(if ok { "ok" } else { "invalid" });
    Ok(Outcome { report, ok })
}

pub fn cohomology(
    path: &Path,
    method: MethodArg,
    coefficients: Option<&Path>,
    unchecked: bool,
    chain_cap: usize,
    args: &SpaceArgs,
) -> Result<Outcome, Failure> {
    const CMD: &str = "cohomology";
    let space = load_space(CMD, path, args.shift_degrees)?;
    let poset = space.poset.clone();
    let mut report = json!({ "command": CMD, "input": input_summary(path, &space), "status": "ok" });
    let top = poset.max_degree().unwrap_or(0);

    if let Some(fpath) = coefficients {
        let f: CoefFunctor =
            parse::<FunctorFile>(CMD, &read(fpath)?)?.build(poset.clone()).map_err(|e| input_failure(CMD, e))?;
        report["coefficients"] = json!(fpath.display().to_string());
        if unchecked {
            let (_, j) = local_family(CMD, &poset, args)?;
            let seq = FunctorSequence::build_from(&f, j).map_err(|e| semantic(CMD, e))?;
            let complex = seq.full_complex().map_err(|e| semantic(CMD, e))?;
            let h = complex.cohomology().map_err(|e| semantic(CMD, e))?;
            report["method"] = json!("sequence");
            report["local_family"] = json!(family_source(args));
            report["ranks"] = json!(complex.ranks);
            report["cohomology"] = report::cohomology(&h);
            return Ok(Outcome { report, ok: true });
        }
        match method {
            MethodArg::Simplicial => {
                return Err(semantic(CMD, "the simplicial method only handles constant integer coefficients"))
            }
            MethodArg::Oracle => {
                let groups = f.higher_limits_oracle(top, chain_cap).map_err(|e| semantic(CMD, e))?;
                report["method"] = json!("oracle");
                report["higher_limits"] = report::groups(&groups);
            }
            MethodArg::Auto | MethodArg::Sequence => {
                let hl = f.higher_limits(top, chain_cap).map_err(|e| semantic(CMD, e))?;
                report["method"] = json!("shift");
                report["higher_limits"] = report::groups(&hl.groups);
                report["methods"] = to_value(&hl.methods);
                report["condensed"] = to_value(&hl.trace);
            }
        }
        return Ok(Outcome { report, ok: true });
    }

    let method = match method {
        MethodArg::Auto if args.local_family.is_some() || args.vertex_order.is_some() => MethodArg::Sequence,
        MethodArg::Auto => match simplex::certify(&poset, args.vertex_order.as_deref()) {
            Ok(_) => MethodArg::Sequence,
            Err(_) => MethodArg::Oracle,
        },
        m => m,
    };
    let h = match method {
        MethodArg::Sequence => {
            let (_, j) = local_family(CMD, &poset, args)?;
            let (_, complex, h) = pipeline::sequence_cohomology(poset.clone(), j).map_err(|e| semantic(CMD, e))?;
            report["method"] = json!("sequence");
            report["local_family"] = json!(family_source(args));
            report["ranks"] = json!(complex.ranks);
            report["euler_check"] = json!(simplex::euler_check(&poset, &simplex::r_values(&poset), &h));
            h
        }
        MethodArg::Simplicial => {
            let cert = simplex::certify(&poset, args.vertex_order.as_deref()).map_err(|e| semantic(CMD, e))?;
            report["method"] = json!("simplicial");
            pipeline::simplicial_cohomology(&poset, &cert).map_err(|e| semantic(CMD, e))?
        }
        MethodArg::Oracle | MethodArg::Auto => {
            report["method"] = json!("oracle");
            pipeline::oracle_cohomology(poset.clone(), chain_cap).map_err(|e| semantic(CMD, e))?
        }
    };
    report["euler_characteristic"] = json!(h.euler_characteristic());
    report["cohomology"] = report::cohomology(&h);
    Ok(Outcome { report, ok: true })
}

pub fn reduce(path: &Path, family: &Path, args: &SpaceArgs) -> Result<Outcome, Failure> {
    const CMD: &str = "reduce";
    let space = load_space(CMD, path, args.shift_degrees)?;
    let poset = space.poset.clone();
    let k = parse::<GlobalFamilyFile>(CMD, &read(family)?)?.build(&poset).map_err(|e| input_failure(CMD, e))?;
    let (_, j) = local_family(CMD, &poset, args)?;
    let r = pipeline::reduce(poset.clone(), j, &k).map_err(|e| semantic(CMD, e))?;
    let ok = r.violations.is_empty();
    let mut report = json!({
        "command": CMD,
        "input": input_summary(path, &space),
        "local_family": family_source(args),
        "status": if ok { "ok" } else { "invalid" },
        "full": { "ranks": r.full.ranks, "cohomology": report::cohomology(&r.full_cohomology) },
        "family": report::global_family(&poset, &k, &r.violations, &r.family_betti),
    });
    if let Some(v) = r.violations.first() {
        report["error"] = json!(v.to_string());
    }
    if let (Some(red), Some(h), Some(ineq)) = (&r.reduced, &r.reduced_cohomology, &r.inequalities) {
        report["reduced"] = json!({
            "complex": report::complex(&red.complex),
            "cohomology": report::cohomology(h),
            "agrees_with_full": *h == r.full_cohomology,
        });
        report["inequalities"] = report::inequalities(ineq);
    }
    Ok(Outcome { report, ok })
}

pub fn morse(path: &Path) -> Result<Outcome, Failure> {
    const CMD: &str = "morse";
    let file: MorseFile = parse(CMD, &read(path)?)?;
    let (_, mf) = file.build().map_err(|e| input_failure(CMD, e))?;
    if let Err(v) = morse::validate_morse(&mf) {
        return Err(Failure::Semantic(report::error(CMD, format!("not a discrete Morse function: {v}"), to_value(&v))));
    }
    let run = pipeline::morse_run(mf).map_err(|e| semantic(CMD, e))?;
    let poset = run.function.poset().clone();
    let c = &run.classification;
    let names = |sets: &[Vec<usize>]| sets.iter().map(|s| report::ids(&poset, s)).collect::<Vec<_>>();
    let r = &run.reduction;
    let agrees = r.reduced_cohomology.as_ref() == Some(&run.simplicial);
    let ok = r.violations.is_empty() && agrees;
    let mut report = json!({
        "command": CMD,
        "input": { "path": path.display().to_string(), "poset": report::poset_summary(&poset) },
        "status": if ok { "ok" } else { "invalid" },
        "critical": names(&c.critical),
        "critical_counts": c.critical_counts(),
        "pairs": c.pairing.iter().map(|&(p, q)| [poset.id(p), poset.id(q)]).collect::<Vec<_>>(),
        "family": report::global_family(&poset, &run.family, &r.violations, &r.family_betti),
        "simplicial_cohomology": report::cohomology(&run.simplicial),
    });
    if let (Some(red), Some(h), Some(ineq)) = (&r.reduced, &r.reduced_cohomology, &r.inequalities) {
        report["reduced"] = json!({
            "complex": report::complex(&red.complex),
            "cohomology": report::cohomology(h),
            "agrees_with_simplicial": agrees,
        });
        report["inequalities"] = report::inequalities(ineq);
    }
    Ok(Outcome { report, ok })
}

pub fn coxeter(path: &Path, max_cells: Option<usize>) -> Result<Outcome, Failure> {
    const CMD: &str = "coxeter";
    let system = parse::<CoxeterFile>(CMD, &read(path)?)?.build().map_err(|e| input_failure(CMD, e))?;
    let cap = max_cells.unwrap_or_else(coxeter::max_cells);
    let run = pipeline::coxeter_run(&system, cap).map_err(|e| semantic(CMD, e))?;
    let poset = &run.complex.poset;
    let r = &run.reduction;
    let sphere = pipeline::sphere_cohomology(system.rank() - 1);
    let is_sphere = r.full_cohomology == sphere;
    let ok = run.group_checks.all() && run.bijection_failures.is_empty() && r.violations.is_empty() && is_sphere;
    let g = &run.group;
    let mut report = json!({
        "command": CMD,
        "input": { "path": path.display().to_string(), "generators": system.generators, "matrix": system.matrix },
        "status": if ok { "ok" } else { "invalid" },
        "order": g.order(),
        "longest_element": { "word": g.word_name(g.longest()), "length": g.length(g.longest()) },
        "group_checks": to_value(&run.group_checks),
        "complex": report::poset_summary(poset),
        "family": report::global_family(poset, &run.family, &r.violations, &r.family_betti),
        "bijection_failures": to_value(&run.bijection_failures),
        "cohomology": report::cohomology(&r.full_cohomology),
        "is_sphere": is_sphere,
    });
    if let Some(h) = &r.reduced_cohomology {
        report["reduced_cohomology"] = report::cohomology(h);
    }
    if !ok {
        report["error"] = json!("Coxeter complex checks failed");
    }
    Ok(Outcome { report, ok })
}

pub fn selfcheck(seed: u64, count: usize, max_cells: usize, max_dim: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for index in 0..count {
        let complex = simplex::random_complex(&mut rng, max_cells, max_dim);
        let poset = Arc::new(complex.face_poset());
        if let Err(e) = check_one(&mut rng, poset) {
            failures.push(json!({ "index": index, "facets": complex_facets(&complex), "error": e }));
        }
    }
    let ok = failures.is_empty();
    let report = json!({
        "command": "selfcheck",
        "status": if ok { "ok" } else { "invalid" },
        "seed": seed,
        "count": count,
        "max_cells": max_cells,
        "max_dim": max_dim,
        "passed": count - failures.len(),
        "failures": failures,
    });
    Outcome { report, ok }
}

fn complex_facets(c: &simplex::SimplicialComplex) -> Vec<String> {
    c.simplices().iter().map(|s| c.name(s)).collect()
}

/// Three-way cohomology agreement plus a random Morse reduction.
fn check_one(rng: &mut ChaCha8Rng, poset: Arc<GradedPoset>) -> Result<(), String> {
    let (cert, j) = pipeline::simplex_like_family(&poset, None).map_err(|e| e.to_string())?;
    let (_, _, seq) = pipeline::sequence_cohomology(poset.clone(), j).map_err(|e| e.to_string())?;
    let simp = pipeline::simplicial_cohomology(&poset, &cert).map_err(|e| e.to_string())?;
    let oracle = pipeline::oracle_cohomology(poset.clone(), poset_cohomology::functor::DEFAULT_CHAIN_CAP)
        .map_err(|e| e.to_string())?;
    if seq != simp || seq != oracle {
        return Err(format!("sequence {:?}, simplicial {:?}, oracle {:?}", seq.groups, simp.groups, oracle.groups));
    }
    let mf = morse::random_morse_function(rng, poset, 0.8);
    let run = pipeline::morse_run(mf).map_err(|e| e.to_string())?;
    if !run.reduction.violations.is_empty() {
        return Err(format!("Morse family rejected: {}", run.reduction.violations[0]));
    }
    if run.reduction.reduced_cohomology.as_ref() != Some(&run.simplicial) {
        return Err("Morse-reduced cohomology differs".into());
    }
    let counts: Vec<i64> = run.classification.critical_counts().iter().map(|&c| c as i64).collect();
    if run.reduction.family_betti != counts {
        return Err("family Betti numbers differ from critical counts".into());
    }
    if !global::morse_inequalities(&run.simplicial.betti(), &counts).holds() {
        return Err("Morse inequalities fail".into());
    }
    Ok(())
}
