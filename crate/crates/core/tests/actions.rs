mod common;

use common::*;
use invariant_orders::action::{
    collapse_exponents, collapse_product, EquivalenceClasses, GroupOptions, PermAction, Permutation,
};
use invariant_orders::oracles::{sim_g_by_definition, sim_g_by_sequences};
use invariant_orders::relation::Relation;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sim_g_matches_both_characterizations(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let a = abelian_action(&mut rng, n, 8);
        let sim = a.sim_g();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(sim.contains(x, y), sim_g_by_definition(&a, x, y).unwrap());
                prop_assert_eq!(sim.contains(x, y), sim_g_by_sequences(&a, x, y, 6).unwrap());
            }
        }
    }

    #[test]
    fn sim_g_is_an_equivalence(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let a = abelian_action(&mut rng, n, 8);
        let sim = a.sim_g();
        prop_assert!(sim.is_reflexive() && sim.is_symmetric() && sim.is_transitive());
        prop_assert_eq!(sim, a.orbits().to_relation());
    }

    #[test]
    fn sim_g_is_equality_iff_no_finite_orbits(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let a = abelian_action(&mut rng, n, 8);
        let trivial_sim = a.sim_g() == Relation::identity(a.universe().clone());
        prop_assert_eq!(trivial_sim, a.satisfies_orbit_condition());
        prop_assert_eq!(a.satisfies_orbit_condition(), a.acts_trivially());
        if let Some(w) = a.finite_orbit_witness() {
            let g = &a.element(w.element).perm;
            prop_assert!(w.orbit.len() > 1);
            prop_assert_eq!(
                PermAction::element_orbit(g, w.orbit[0]).into_iter().collect::<Vec<_>>(),
                w.orbit.clone()
            );
        }
    }

    #[test]
    fn group_closure_is_closed_with_valid_words(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let a = abelian_action(&mut rng, n, 8);
        prop_assert!(a.element(0).perm.is_identity());
        for (i, e) in a.elements().iter().enumerate() {
            prop_assert_eq!(&e.evaluate_word(a.generators()), &e.perm);
            for j in 0..a.order() {
                let prod = e.perm.compose(&a.element(j).perm);
                prop_assert_eq!(a.position(&prod), Some(a.multiply(i, j)));
            }
            prop_assert!(a.multiply(i, a.inverse_of(i)) == 0);
        }
    }

    #[test]
    fn orbit_quotient_is_trivial(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let a = abelian_action(&mut rng, n, 8);
        let q = a.quotient(&a.orbits()).unwrap();
        prop_assert_eq!(q.universe().size(), a.orbits().num_classes());
        prop_assert!(q.acts_trivially());
    }

    #[test]
    fn powerset_action_is_faithful_on_subsets(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = rng(seed);
        let a = abelian_action(&mut rng, n, 8);
        let p = a.powerset().unwrap();
        prop_assert_eq!(p.universe().size(), 1 << n);
        prop_assert_eq!(p.order(), a.order());
        prop_assert!(p.is_abelian());
    }
}

fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cycles).unwrap()
}

#[test]
fn group_examples() {
    assert_eq!(PermAction::trivial(u(3)).order(), 1);
    let swap = PermAction::new(u(2), vec![("s".into(), cyc(2, &[&[0, 1]]))]).unwrap();
    assert_eq!(swap.order(), 2);
    assert!(PermAction::new(
        u(3),
        vec![
            ("r".into(), cyc(3, &[&[0, 1, 2]])),
            ("s".into(), cyc(3, &[&[0, 1]]))
        ]
    )
    .is_err());
}

#[test]
fn orbit_examples() {
    assert_eq!(
        PermAction::trivial(u(2)).orbits().classes(),
        vec![vec![0], vec![1]]
    );
    let g = cyc(4, &[&[0, 1], &[2, 3]]);
    assert_eq!(
        PermAction::element_orbit(&g, 0)
            .into_iter()
            .collect::<Vec<_>>(),
        vec![0, 1]
    );
    let klein = PermAction::new(
        u(4),
        vec![
            ("a".into(), cyc(4, &[&[0, 1]])),
            ("b".into(), cyc(4, &[&[2, 3]])),
        ],
    )
    .unwrap();
    assert_eq!(klein.order(), 4);
    assert_eq!(klein.orbits().classes(), vec![vec![0, 1], vec![2, 3]]);
}

#[test]
fn non_abelian_orbit_relation_is_still_transitive() {
    // On a finite universe every element has finite order, so the defining
    // condition gⁿ·y = y always holds and ~G is the orbit relation.
    let s3 = PermAction::with_options(
        u(3),
        vec![
            ("r".into(), cyc(3, &[&[0, 1, 2]])),
            ("s".into(), cyc(3, &[&[0, 1]])),
        ],
        GroupOptions {
            allow_nonabelian: true,
            ..GroupOptions::default()
        },
    )
    .unwrap();
    assert_eq!(s3.order(), 6);
    assert!(!s3.is_abelian());
    let sim = s3.sim_g();
    assert!(sim.is_transitive());
    assert_eq!(sim, Relation::full(u(3)));
}

#[test]
fn quotient_examples() {
    let a = PermAction::new(u(4), vec![("g".into(), cyc(4, &[&[0, 1], &[2, 3]]))]).unwrap();
    let q = a.quotient(&a.orbits()).unwrap();
    assert_eq!(q.universe().size(), 2);
    assert!(q.acts_trivially());
    let bad = EquivalenceClasses::from_representatives(u(4), vec![0, 1, 0, 3]).unwrap();
    assert!(a.quotient(&bad).is_err());
    let c3 = PermAction::new(u(3), vec![("r".into(), cyc(3, &[&[0, 1, 2]]))]).unwrap();
    assert_eq!(c3.quotient(&c3.orbits()).unwrap().universe().size(), 1);
}

#[test]
fn collapse_identity_examples() {
    assert_eq!(collapse_exponents(3, 3, 3), Some([6, 9, 9, 3]));
    assert_eq!(collapse_product(3, 3, 3), Some([0, 0, 0]));
    assert_eq!(collapse_exponents(2, 3, 3), None);
}
