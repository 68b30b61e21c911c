//! Invariants checked on random simplicial complexes and on every bundled
//! simplex-like fixture.

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_cohomology::fixtures;
use poset_cohomology::functor::DEFAULT_CHAIN_CAP;
use poset_cohomology::global::{self, GlobalCoveringFamily};
use poset_cohomology::morse;
use poset_cohomology::pipeline;
use poset_cohomology::poset::GradedPoset;
use poset_cohomology::sequence::FunctorSequence;
use poset_cohomology::simplex::{self, random_complex};

fn random_poset(seed: u64) -> Arc<GradedPoset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Arc::new(random_complex(&mut rng, 25, 3).face_poset())
}

/// Every bundled simplex-like poset (complexes, the projective plane and
/// Coxeter complexes).
fn simplex_like_fixtures() -> Vec<(String, Arc<GradedPoset>)> {
    let mut out: Vec<(String, Arc<GradedPoset>)> =
        fixtures::COMPLEXES.iter().map(|(n, t)| (n.to_string(), fixtures::complex_poset(t))).collect();
    out.push(("rp2".into(), fixtures::poset(fixtures::RP2_POSET)));
    for (name, text) in fixtures::MORSE {
        out.push((format!("{name} (Morse)"), fixtures::morse(text).build().unwrap().1.poset().clone()));
    }
    for (name, text) in fixtures::COXETER {
        let g = poset_cohomology::coxeter::enumerate(&fixtures::coxeter(text), 100_000).unwrap();
        out.push((format!("{name} (Coxeter)"), poset_cohomology::coxeter::coxeter_complex(&g, 100_000).unwrap().poset));
    }
    out
}

/// Cohomology three ways; panics with context on disagreement.
fn three_way(name: &str, poset: &Arc<GradedPoset>) {
    let (cert, j) = pipeline::simplex_like_family(poset, None).unwrap();
    let (_, _, seq_h) = pipeline::sequence_cohomology(poset.clone(), j).unwrap();
    let simp_h = pipeline::simplicial_cohomology(poset, &cert).unwrap();
    let oracle_h = pipeline::oracle_cohomology(poset.clone(), DEFAULT_CHAIN_CAP).unwrap();
    assert_eq!(seq_h, simp_h, "{name}: sequence vs simplicial");
    assert_eq!(seq_h, oracle_h, "{name}: sequence vs oracle");
}

#[test]
fn three_way_agreement_on_200_random_complexes() {
    for seed in 0..200 {
        let poset = random_poset(seed);
        assert!(poset.len() <= 25);
        assert!(poset.max_degree().unwrap() <= 3);
        three_way(&format!("seed {seed}"), &poset);
    }
}

#[test]
fn three_way_agreement_on_fixtures() {
    for (name, poset) in simplex_like_fixtures() {
        three_way(&name, &poset);
    }
}

/// Sequence-level structure: ranks, condensedness, restriction isomorphisms,
/// `d∘d = 0` and the Euler identity.
fn structural(name: &str, poset: &Arc<GradedPoset>) {
    let (_, j) = pipeline::simplex_like_family(poset, None).unwrap();
    let r = simplex::r_values(poset);
    for p in 0..poset.len() {
        for (n, &v) in r[p].iter().enumerate() {
            assert_eq!(v, simplex::r_closed_form(poset.degree(p), n), "{name}: R closed form");
        }
    }
    let seq = FunctorSequence::build(poset.clone(), j.clone()).unwrap();
    for n in 0..seq.level_count() {
        for p in 0..poset.len() {
            if poset.degree(p) >= n {
                assert_eq!(seq.rank(n, p) as i64, r[p][n], "{name}: rank F_{n}({})", poset.id(p));
            }
        }
    }
    let full = seq.full_complex().unwrap();
    full.check_dd().unwrap();
    for (n, &rank) in full.ranks.iter().enumerate() {
        let expected: i64 = poset.objects_of_degree(n).iter().map(|&p| r[p][n]).sum();
        assert_eq!(rank as i64, expected, "{name}: rank M_{n}");
    }
    let h = full.cohomology().unwrap();
    assert!(simplex::euler_check(poset, &r, &h), "{name}: Euler identity");
    let cells: i64 =
        poset.degree_counts().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
    assert_eq!(h.euler_characteristic(), cells, "{name}: Euler characteristic from cell counts");
    for g in &h.groups {
        assert!(g.torsion.windows(2).all(|w| w[1] % w[0] == 0), "{name}: divisibility chain");
    }
}

#[test]
fn structure_on_fixtures() {
    for (name, poset) in simplex_like_fixtures() {
        structural(&name, &poset);
    }
}

#[test]
fn level_functors_are_condensed() {
    let mut posets = simplex_like_fixtures();
    posets.extend((0..20).map(|s| (format!("seed {s}"), random_poset(s))));
    for (name, poset) in posets {
        if poset.len() > 60 {
            continue;
        }
        let (_, j) = pipeline::simplex_like_family(&poset, None).unwrap();
        let seq = FunctorSequence::build(poset.clone(), j).unwrap();
        for n in 0..seq.level_count() {
            let f = seq.level_functor(n).unwrap();
            assert!(f.is_n_condensed(n).unwrap().holds(), "{name}: F_{n} not {n}-condensed");
        }
    }
}

#[test]
fn vertex_order_does_not_change_cohomology() {
    for seed in 0..40 {
        let poset = random_poset(seed);
        let (cert, j) = pipeline::simplex_like_family(&poset, None).unwrap();
        let mut order: Vec<String> = cert.vertex_order.iter().map(|&v| poset.id(v).to_string()).collect();
        order.reverse();
        let (_, j2) = pipeline::simplex_like_family(&poset, Some(&order)).unwrap();
        let (_, _, h1) = pipeline::sequence_cohomology(poset.clone(), j).unwrap();
        let (_, _, h2) = pipeline::sequence_cohomology(poset.clone(), j2).unwrap();
        assert_eq!(h1, h2, "seed {seed}");
    }
}

/// For every object, `K_n = J_n^{p0}` on the under-category is a global
/// covering family with `b^K = (1, 0, …)`.
fn under_category_families(name: &str, poset: &Arc<GradedPoset>) {
    let (_, j) = pipeline::simplex_like_family(poset, None).unwrap();
    for p0 in 0..poset.len() {
        let (sub, sub_j, k) = global::under_category_family(poset, &j, p0);
        let r = pipeline::reduce(sub, sub_j, &k).unwrap();
        assert!(r.violations.is_empty(), "{name} at {}: {:?}", poset.id(p0), r.violations);
        let mut expected = vec![0; poset.degree(p0) + 1];
        expected[0] = 1;
        assert_eq!(r.family_betti, expected, "{name} at {}", poset.id(p0));
    }
}

#[test]
fn under_category_families_on_fixtures() {
    for (name, poset) in simplex_like_fixtures() {
        if poset.len() > 60 {
            continue;
        }
        under_category_families(&name, &poset);
    }
}

#[test]
fn whole_family_reproduces_full_complex() {
    for (name, poset) in simplex_like_fixtures() {
        let (_, j) = pipeline::simplex_like_family(&poset, None).unwrap();
        let k = GlobalCoveringFamily::everything(&poset);
        let r = pipeline::reduce(poset.clone(), j, &k).unwrap();
        assert!(r.violations.is_empty(), "{name}");
        let counts: Vec<i64> = poset.degree_counts().iter().map(|&c| c as i64).collect();
        assert_eq!(r.family_betti, counts, "{name}");
        let reduced = r.reduced.unwrap();
        assert_eq!(reduced.complex.ranks, r.full.ranks, "{name}");
        assert_eq!(reduced.complex.differentials, r.full.differentials, "{name}");
    }
}

#[test]
fn two_sphere_whole_family_inequalities() {
    let poset = fixtures::poset(fixtures::TORSION_TOWER_POSET);
    let j = fixtures::local_family(&poset, fixtures::TORSION_TOWER_FAMILY);
    let k = GlobalCoveringFamily::everything(&poset);
    let r = pipeline::reduce(poset, j, &k).unwrap();
    assert_eq!(r.full.ranks, vec![2, 2, 2]);
    assert_eq!(r.full_cohomology.betti(), vec![1, 0, 1]);
    assert_eq!(r.family_betti, vec![2, 2, 2]);
    assert!(r.inequalities.unwrap().holds());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn random_complexes_satisfy_structure(seed in 1_000u64..1_000_000) {
        structural(&format!("seed {seed}"), &random_poset(seed));
    }

    #[test]
    fn random_morse_families_reduce_correctly(seed in 0u64..1_000_000, bias in 0.0f64..1.0) {
        let poset = random_poset(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mf = morse::random_morse_function(&mut rng, poset, bias);
        prop_assert!(morse::validate_morse(&mf).is_ok());
        let run = pipeline::morse_run(mf).unwrap();
        let c = &run.classification;
        prop_assert!(run.reduction.violations.is_empty());
        let counts: Vec<i64> = c.critical_counts().iter().map(|&x| x as i64).collect();
        prop_assert_eq!(&run.reduction.family_betti, &counts);
        for n in 1..c.d.len() {
            prop_assert_eq!(c.e[n - 1].len(), c.d[n].len());
        }
        let reduced = run.reduction.reduced.as_ref().unwrap();
        reduced.complex.check_dd().unwrap();
        prop_assert_eq!(run.reduction.reduced_cohomology.as_ref().unwrap(), &run.simplicial);
        prop_assert!(run.reduction.inequalities.as_ref().unwrap().holds());
    }

    #[test]
    fn random_under_category_families(seed in 0u64..1_000_000) {
        under_category_families(&format!("seed {seed}"), &random_poset(seed));
    }
}
