//! Randomized invariants of the core data structures.

use std::collections::{HashSet, VecDeque};

use amalgamlab::fp::{Presentation, Word};
use amalgamlab::graphsym::Graph;
use amalgamlab::{PermGroup, Permutation};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..=12).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

fn small_group() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (2usize..=8).prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=3)))
}

fn closure_count(n: usize, gens: &[Permutation]) -> usize {
    let id = Permutation::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn permutation_laws((p, q, r) in triple()) {
        let n = p.degree();
        let id = Permutation::identity(n);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &p.inverse(), id.clone());
        prop_assert_eq!(&p * &id, p.clone());
        for x in 0..n as u32 {
            prop_assert_eq!((&p * &q).image(x), q.image(p.image(x)));
        }
        prop_assert_eq!(p.conjugate_by(&q), &(&q.inverse() * &p) * &q);
        prop_assert_eq!(p.commutator(&q), &(&p.inverse() * &q.inverse()) * &(&p * &q));
        prop_assert!(p.pow(p.order() as i64).is_identity());
        prop_assert_eq!(Permutation::parse_cycles(&p.to_string(), n).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn chain_order_matches_closure((n, gens) in small_group()) {
        let g = PermGroup::new(n, gens.clone()).unwrap();
        prop_assert_eq!(g.order(), closure_count(n, &gens) as u128);
        for x in &gens {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn orbit_stabilizer((n, gens) in small_group()) {
        let g = PermGroup::new(n, gens).unwrap();
        for x in 0..n as u32 {
            let orbit = g.orbit(x).len() as u128;
            prop_assert_eq!(orbit * g.pointwise_stabilizer(&[x]).order(), g.order());
        }
    }

    #[test]
    fn word_evaluation_is_multiplicative(
        gens in (2usize..=7).prop_flat_map(|n| prop::collection::vec(perm(n), 2)),
        u in prop::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..10),
        v in prop::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..10),
    ) {
        let n = gens[0].degree();
        let (u, v) = (Word(u), Word(v));
        let lhs = u.concat(&v).evaluate(&gens, n);
        let rhs = &u.evaluate(&gens, n) * &v.evaluate(&gens, n);
        prop_assert_eq!(lhs, rhs);
        prop_assert!(u.concat(&u.inverse()).evaluate(&gens, n).is_identity());
    }

    #[test]
    fn edge_list_round_trips(n in 2usize..20, seed in prop::collection::vec((0u32..20, 0u32..20), 0..40)) {
        let edges: Vec<(u32, u32)> = seed
            .into_iter()
            .filter(|&(a, b)| a != b && (a as usize) < n && (b as usize) < n)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|&(a, b)| a < b)
            .collect();
        let g = Graph::new(n, &edges).unwrap();
        let h = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(h.vertex_count(), n);
        prop_assert_eq!(h.edges(), g.edges());
    }
}

#[test]
fn dihedral_presentations_have_order_2n() {
    for n in 2..=20 {
        let p = Presentation::from_relators(&["a", "b"], &format!("a^{n}, b^2, (ab)^2"), &[]).unwrap();
        assert_eq!(p.order(10_000).unwrap(), 2 * n);
    }
}
