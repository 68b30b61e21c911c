//! Coxeter groups, Coxeter complexes and the descent covering family.

use poset_cohomology::coxeter::{self, CoxeterError, CoxeterSystem};
use poset_cohomology::fixtures;
use poset_cohomology::pipeline;

const CAP: usize = 100_000;

/// Signed permutations of `n` letters, counted directly.
fn signed_permutations(n: usize) -> usize {
    let mut perms = vec![Vec::<usize>::new()];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| (0..n).filter(|i| !p.contains(i)).map(|i| [p.clone(), vec![i]].concat()).collect::<Vec<_>>())
            .collect();
    }
    perms.len() * (1 << n)
}

#[test]
fn group_orders() {
    let order = |s: &CoxeterSystem| coxeter::enumerate(s, CAP).unwrap().order();
    assert_eq!(order(&fixtures::coxeter(fixtures::COXETER_A1)), 2);
    assert_eq!(order(&fixtures::coxeter(fixtures::COXETER_A2)), 6);
    assert_eq!(order(&fixtures::coxeter(fixtures::COXETER_A1XA1)), 4);
    assert_eq!(order(&fixtures::coxeter(fixtures::COXETER_A3)), 24);
    assert_eq!(order(&fixtures::coxeter(fixtures::COXETER_B3)), signed_permutations(3));
    assert_eq!(order(&CoxeterSystem::type_a(4)), 120);
    assert_eq!(order(&CoxeterSystem::type_b(4)), signed_permutations(4));
    for m in 2..=12 {
        assert_eq!(order(&CoxeterSystem::dihedral(m)), 2 * m as usize);
    }
}

#[test]
fn longest_element_lengths() {
    // Number of reflections: n(n+1)/2 for A_n, n^2 for B_n, m for I_2(m).
    let g = coxeter::enumerate(&CoxeterSystem::type_a(3), CAP).unwrap();
    assert_eq!(g.length(g.longest()), 6);
    let g = coxeter::enumerate(&CoxeterSystem::type_b(3), CAP).unwrap();
    assert_eq!(g.length(g.longest()), 9);
    let g = coxeter::enumerate(&CoxeterSystem::dihedral(7), CAP).unwrap();
    assert_eq!(g.length(g.longest()), 7);
}

#[test]
fn descent_data_examples() {
    let g = coxeter::enumerate(&fixtures::coxeter(fixtures::COXETER_A2), CAP).unwrap();
    assert_eq!(g.descent_data(g.identity()), (0b11, Some(1)));
    assert_eq!(g.descent_data(g.longest()).0, 0);
    let s1 = g.mul_gen(g.identity(), 0);
    assert_eq!(g.descent_data(s1), (0b10, Some(1)));
    let s2 = g.mul_gen(g.identity(), 1);
    let s2s1 = g.mul_gen(s2, 0);
    assert_eq!(g.minimal_rep(s2s1, 0b01), s2);
    for w in 0..g.order() {
        for set in 0..=g.full_set() {
            let u = g.minimal_rep(w, set);
            assert_eq!(g.minimal_rep(u, set), u);
        }
    }
}

#[test]
fn a2_is_a_hexagon() {
    let g = coxeter::enumerate(&fixtures::coxeter(fixtures::COXETER_A2), CAP).unwrap();
    let c = coxeter::coxeter_complex(&g, CAP).unwrap();
    assert_eq!(c.poset.degree_counts(), vec![6, 6]);
}

#[test]
fn a3_cell_counts() {
    let g = coxeter::enumerate(&fixtures::coxeter(fixtures::COXETER_A3), CAP).unwrap();
    let c = coxeter::coxeter_complex(&g, CAP).unwrap();
    assert_eq!(c.poset.degree_counts(), vec![14, 36, 24]);
}

#[test]
fn a1_is_two_points_with_doubled_family() {
    let run = pipeline::coxeter_run(&fixtures::coxeter(fixtures::COXETER_A1), CAP).unwrap();
    assert_eq!(run.complex.poset.degree_counts(), vec![2]);
    assert_eq!(run.family.get(0).len(), 2);
    assert!(run.reduction.violations.is_empty());
    assert_eq!(run.reduction.family_betti, vec![2]);
    assert_eq!(run.reduction.full_cohomology, pipeline::sphere_cohomology(0));
}

#[test]
fn sphere_families() {
    let mut systems: Vec<(String, CoxeterSystem)> = fixtures::COXETER
        .iter()
        .filter(|(name, _)| *name != "a1")
        .map(|(name, text)| (name.to_string(), fixtures::coxeter(text)))
        .collect();
    for m in 4..=8 {
        systems.push((format!("i2_{m}"), CoxeterSystem::dihedral(m)));
    }
    for (name, system) in systems {
        let run = pipeline::coxeter_run(&system, CAP).unwrap();
        let d = system.rank() - 1;
        assert!(run.group_checks.all(), "{name}: {:?}", run.group_checks);
        assert!(run.bijection_failures.is_empty(), "{name}: {:?}", run.bijection_failures);
        assert!(run.reduction.violations.is_empty(), "{name}: {:?}", run.reduction.violations);
        let mut expected = vec![0i64; d + 1];
        expected[0] = 1;
        expected[d] = 1;
        assert_eq!(run.reduction.family_betti, expected, "{name}");
        let sphere = pipeline::sphere_cohomology(d);
        assert_eq!(run.reduction.full_cohomology, sphere, "{name}");
        assert_eq!(run.reduction.reduced_cohomology.as_ref().unwrap(), &sphere, "{name}");
        // K_0 is the vertex 1·W_{S \ {s_N}}
        let k0: Vec<_> = run.family.get(0).iter().map(|&p| run.complex.cells[p]).collect();
        assert_eq!(k0, vec![(run.group.identity(), run.group.full_set() & !(1 << d))], "{name}");
    }
}

#[test]
fn invalid_and_unsupported_systems() {
    let bad = CoxeterSystem::new(vec!["a".into(), "b".into()], vec![vec![1, 3], vec![2, 1]]);
    assert!(matches!(bad, Err(CoxeterError::InvalidMatrix(_))));
    let bad = CoxeterSystem::new(vec!["a".into()], vec![vec![2]]);
    assert!(matches!(bad, Err(CoxeterError::InvalidMatrix(_))));
    let h3 =
        CoxeterSystem::new(vec!["a".into(), "b".into(), "c".into()], vec![vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]])
            .unwrap();
    assert!(matches!(coxeter::enumerate(&h3, CAP), Err(CoxeterError::Unsupported(_))));
    let g2 = CoxeterSystem::new(vec!["a".into(), "b".into()], vec![vec![1, 6], vec![6, 1]]).unwrap();
    assert_eq!(coxeter::enumerate(&g2, CAP).unwrap().order(), 12);
    let a2_tilde =
        CoxeterSystem::new(vec!["a".into(), "b".into(), "c".into()], vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]])
            .unwrap();
    assert_eq!(coxeter::enumerate(&a2_tilde, 1000).unwrap_err(), CoxeterError::TooLarge { cap: 1000 });
}
