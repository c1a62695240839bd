mod common;

use common::*;
use glim_core::constructions::random_regular;
use glim_core::graph::Graph;
use glim_core::obstruction::max_independent_set;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn exact_solver_matches_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let n = rng.gen_range(0..=16);
        let p = rng.gen_range(0.05..0.9);
        let g = random_graph(&mut rng, n, p);
        let m = max_independent_set(&g, 150);
        assert!(m.exact);
        assert_eq!(m.size, brute_alpha(&g), "{:?}", g.edges());
        assert_eq!(m.witness.len(), m.size);
        assert!(g.is_independent(&m.witness).is_none());
    }
}

#[test]
fn named_graphs() {
    for (g, a) in [(Graph::cycle(4), 2), (Graph::complete(4), 1), (Graph::petersen(), 4)] {
        assert_eq!(max_independent_set(&g, 150).size, a);
        assert_eq!(brute_alpha(&g), a);
    }
}

#[test]
fn heuristic_bounds_bracket_the_exact_value() {
    for seed in 0..5 {
        let g = random_regular(22, 3, seed).unwrap();
        let exact = brute_alpha(&g);
        let h = max_independent_set(&g, 0);
        assert!(!h.exact);
        assert!(h.lower <= exact && exact <= h.upper, "{} <= {exact} <= {}", h.lower, h.upper);
        assert!(g.is_independent(&h.witness).is_none());
    }
}
