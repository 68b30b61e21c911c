//! Discrete Morse functions: classification, the induced family and its
//! reduced complex.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_cohomology::fixtures;
use poset_cohomology::global;
use poset_cohomology::morse::{self, MorseError, MorseFailure, MorseFunction, Rational};
use poset_cohomology::pipeline;
use poset_cohomology::simplex::SimplicialComplex;

fn check_run(mf: MorseFunction) -> pipeline::MorseRun {
    let run = pipeline::morse_run(mf).unwrap();
    let c = &run.classification;
    assert!(run.reduction.violations.is_empty(), "{:?}", run.reduction.violations);
    let counts: Vec<i64> = c.critical_counts().iter().map(|&x| x as i64).collect();
    assert_eq!(run.reduction.family_betti, counts);
    for n in 1..c.d.len() {
        assert_eq!(c.e[n - 1].len(), c.d[n].len());
    }
    assert_eq!(run.reduction.reduced_cohomology.as_ref().unwrap(), &run.simplicial);
    assert_eq!(run.reduction.full_cohomology, run.simplicial);
    assert!(run.reduction.inequalities.as_ref().unwrap().holds());
    run
}

#[test]
fn bundled_morse_functions() {
    for (name, text) in fixtures::MORSE {
        let (_, mf) = fixtures::morse(text).build().unwrap();
        let run = check_run(mf);
        match *name {
            "path" => assert_eq!(run.reduction.family_betti, vec![1, 0]),
            "triangle" => assert_eq!(run.reduction.family_betti, vec![1, 1]),
            _ => {}
        }
    }
}

#[test]
fn dimension_function_reproduces_full_complex() {
    for (_, text) in fixtures::COMPLEXES {
        let poset = fixtures::complex_poset(text);
        let run = check_run(MorseFunction::dimension(poset.clone()));
        assert!(run.classification.d.iter().chain(&run.classification.e).all(Vec::is_empty));
        let reduced = run.reduction.reduced.unwrap();
        assert_eq!(reduced.complex.ranks, run.reduction.full.ranks);
        assert_eq!(reduced.complex.differentials, run.reduction.full.differentials);
    }
}

#[test]
fn triangle_critical_cells_found_by_search() {
    // Search edge values in {0, 1/2, ..., 3} with f(v_i) = i for functions
    // having exactly two critical cells.
    let complex = SimplicialComplex::from_facets(&[vec!["v0", "v1"], vec!["v1", "v2"], vec!["v0", "v2"]]).unwrap();
    let poset = Arc::new(complex.face_poset());
    let id = |s: &str| poset.index_of(s).unwrap();
    let mut found = Vec::new();
    for a in 0..=6 {
        for b in 0..=6 {
            for c in 0..=6 {
                let mut values = vec![Rational::from_integer(0); poset.len()];
                for (k, v) in [("v0", 0), ("v1", 2), ("v2", 4), ("v0 v1", a), ("v1 v2", b), ("v0 v2", c)] {
                    values[id(k)] = Rational::new(v, 2);
                }
                let mf = MorseFunction::from_values(poset.clone(), values);
                if morse::validate_morse(&mf).is_err() {
                    continue;
                }
                let cls = morse::classify(&mf).unwrap();
                if cls.critical_counts().iter().sum::<usize>() == 2 {
                    found.push((a, b, c));
                }
            }
        }
    }
    assert!(found.contains(&(1, 3, 6)), "{found:?}");
    let (_, mf) = fixtures::morse(fixtures::TRIANGLE_MORSE).build().unwrap();
    let cls = morse::classify(&mf).unwrap();
    let names = |v: &[usize]| v.iter().map(|&p| mf.poset().id(p).to_string()).collect::<Vec<_>>();
    assert_eq!(names(&cls.critical[0]), ["v0"]);
    assert_eq!(names(&cls.critical[1]), ["v0 v2"]);
}

#[test]
fn constant_function_is_rejected_with_witness() {
    let (_, mf) = fixtures::morse(fixtures::TRIANGLE_CONSTANT_MORSE).build().unwrap();
    let v = morse::validate_morse(&mf).unwrap_err();
    assert_eq!(v.failure, MorseFailure::Cofaces);
    assert!(v.offending.len() >= 2);
    assert!(matches!(pipeline::morse_run(mf), Err(pipeline::PipelineError::Morse(MorseError::NotMorse(_)))));
}

#[test]
fn missing_and_unknown_values() {
    let complex = SimplicialComplex::from_facets(&[vec!["a", "b"]]).unwrap();
    let mut f: BTreeMap<String, Rational> =
        [("a", 0), ("b", 1)].iter().map(|&(k, v)| (k.into(), Rational::from_integer(v))).collect();
    assert_eq!(MorseFunction::new(&complex, &f).unwrap_err(), MorseError::MissingValue("a b".into()));
    f.insert("b a".into(), Rational::from_integer(2));
    assert!(MorseFunction::new(&complex, &f).is_ok());
    f.insert("c".into(), Rational::from_integer(2));
    assert_eq!(MorseFunction::new(&complex, &f).unwrap_err(), MorseError::UnknownSimplex("c".into()));
}

#[test]
fn random_collapse_functions_on_bundled_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (_, text) in fixtures::COMPLEXES {
        let poset = fixtures::complex_poset(text);
        for _ in 0..20 {
            let mf = morse::random_morse_function(&mut rng, poset.clone(), 0.8);
            morse::validate_morse(&mf).unwrap();
            check_run(mf);
        }
    }
}

#[test]
fn tetrahedron_boundary_collapses_to_two_cells() {
    let poset = fixtures::complex_poset(fixtures::TETRAHEDRON_BOUNDARY);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let best = (0..50)
        .map(|_| check_run(morse::random_morse_function(&mut rng, poset.clone(), 1.0)))
        .min_by_key(|run| run.classification.critical_counts().iter().sum::<usize>())
        .unwrap();
    assert_eq!(best.classification.critical_counts(), vec![1, 0, 1]);
    assert_eq!(best.reduction.family_betti, vec![1, 0, 1]);
}

#[test]
fn family_betti_matches_critical_counts_via_global_module() {
    let (_, mf) = fixtures::morse(fixtures::PATH_MORSE).build().unwrap();
    let cls = morse::classify(&mf).unwrap();
    let k = morse::family_from_morse(&cls);
    let r = poset_cohomology::simplex::r_values(mf.poset());
    assert_eq!(global::family_betti(mf.poset(), &r, &k), vec![1, 0]);
}
