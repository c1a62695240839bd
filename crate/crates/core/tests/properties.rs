mod common;

use common::*;
use glim_core::cayley::{limit_ball, Mode};
use glim_core::constructions::{product_c4, random_regular};
use glim_core::format::GraphFile;
use glim_core::graph::{extract_ball, girth, rooted_distance, Graph, RootedBall};
use glim_core::limits::{ball_census, census_tv_distance, good_fraction, tree_ball_vertices};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_from(seed: u64, n: usize, p: f64) -> Graph {
    random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, p)
}

fn relabel(g: &Graph, seed: u64) -> Graph {
    let mut p: Vec<usize> = (0..g.n()).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Graph::new(g.n(), g.edges().iter().map(|&(u, v)| (p[u], p[v]))).unwrap()
}

fn balls(g: &Graph, v: usize, r_max: usize) -> Vec<RootedBall> {
    (0..=r_max).map(|r| extract_ball(g, v, r).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn girth_matches_cycle_enumeration(seed: u64, n in 1usize..11, p in 0.1f64..0.6) {
        let g = graph_from(seed, n, p);
        prop_assert_eq!(girth(&g).value(), brute_girth(&g));
    }

    #[test]
    fn balls_are_trees_iff_girth_exceeds_diameter(seed in 0u64..1000, half in 5usize..20, r in 1usize..4) {
        let g = random_regular(2 * half, 3, seed).unwrap();
        let all_trees = tree_ball_vertices(&g, r).iter().all(|&t| t);
        let long = girth(&g).value().is_none_or(|len| len > 2 * r + 1);
        prop_assert_eq!(all_trees, long);
    }

    #[test]
    fn rooted_distance_is_an_ultrametric(seed: u64, n in 2usize..14, a in 0usize..14, b in 0usize..14, c in 0usize..14) {
        let g = graph_from(seed, n, 0.3);
        let (a, b, c) = (balls(&g, a % n, 3), balls(&g, b % n, 3), balls(&g, c % n, 3));
        let d = |x: &[RootedBall], y: &[RootedBall]| rooted_distance(x, y, 3).unwrap().value();
        prop_assert!(d(&a, &c) <= d(&a, &b).max(d(&b, &c)));
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert_eq!(d(&a, &a), 0.125);
    }

    #[test]
    fn census_is_relabelling_invariant(seed: u64, n in 1usize..16, r in 0usize..3) {
        let g = graph_from(seed, n, 0.3);
        let h = relabel(&g, seed ^ 1);
        prop_assert_eq!(ball_census(&g, r).unwrap(), ball_census(&h, r).unwrap());
    }

    #[test]
    fn good_fraction_is_the_census_frequency(seed in 0u64..1000, half in 5usize..15, r in 0usize..3) {
        let host = product_c4(&random_regular(2 * half, 3, seed).unwrap()).unwrap();
        let limit = limit_ball(r, Mode::Graph).ball;
        let g = good_fraction(&host.graph, &limit).unwrap();
        let census = ball_census(&host.graph, r).unwrap();
        let code = glim_core::graph::canonical_code(&limit);
        prop_assert_eq!(g.good.len() as u64, census.count(&code));
    }

    #[test]
    fn tv_distance_is_a_bounded_symmetric_distance(s1: u64, s2: u64, n in 1usize..14) {
        let c1 = ball_census(&graph_from(s1, n, 0.3), 1).unwrap();
        let c2 = ball_census(&graph_from(s2, n + 1, 0.3), 1).unwrap();
        let d = census_tv_distance(&c1, &c2).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(d, census_tv_distance(&c2, &c1).unwrap());
        prop_assert_eq!(census_tv_distance(&c1, &c1).unwrap(), 0.0);
    }

    #[test]
    fn product_counts_and_fibers(seed: u64, n in 1usize..12) {
        let h = graph_from(seed, n, 0.4);
        let p = product_c4(&h).unwrap();
        prop_assert_eq!(p.graph.n(), 4 * n);
        prop_assert_eq!(p.graph.edge_count(), 4 * h.edge_count() + 4 * n);
        prop_assert_eq!(p.fiber_mismatch(), None);
    }

    #[test]
    fn graph_files_round_trip(seed: u64, n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.4);
        let d = random_diagram(&mut rng, g);
        let f = GraphFile::from_diagram(&d);
        let back = GraphFile::from_json(&f.to_json()).unwrap();
        prop_assert_eq!(back.diagram().unwrap().unwrap(), d);
        prop_assert_eq!(back, f);
    }
}

#[test]
fn petersen_girth_by_enumeration() {
    assert_eq!(brute_girth(&Graph::petersen()), Some(5));
    assert_eq!(girth(&Graph::petersen()).value(), Some(5));
}
