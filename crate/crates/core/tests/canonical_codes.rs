mod common;

use std::collections::BTreeSet;

use common::*;
use glim_core::graph::{canonical_code, extract_ball, find_isomorphisms, rooted_isomorphic, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn codes_match_brute_force_on_random_rooted_graphs() {
    let items = random_code_items(2000, 11);
    assert_eq!(discrepancies(&items), 0);
    // the sample must exercise both equal and distinct codes
    let distinct: BTreeSet<&String> = items.iter().map(|(c, _)| c).collect();
    assert!(distinct.len() > 100 && distinct.len() < items.len());
}

#[test]
fn codes_match_brute_force_exhaustively_up_to_four_vertices() {
    let (plain, oriented) = exhaustive_code_items(4);
    assert_eq!(discrepancies(&plain), 0);
    assert_eq!(discrepancies(&oriented), 0);
}

#[test]
fn nine_rooted_trees_on_five_vertices() {
    let (plain, _) = exhaustive_code_items(5);
    let trees: BTreeSet<&String> = plain
        .iter()
        // five vertices and four edges, each edge appearing twice in the matrix
        .filter(|(_, brute)| brute[0] == 5 && brute[1..].iter().filter(|&&x| x != 0).count() == 2 * 4)
        .map(|(c, _)| c)
        .collect();
    assert_eq!(trees.len(), 9);
}

#[test]
fn isomorphism_search_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let n = 1 + rand::Rng::gen_range(&mut rng, 0..7);
        let g = random_graph(&mut rng, n, 0.5);
        let d = random_diagram(&mut rng, g);
        let e = if rand::Rng::gen_bool(&mut rng, 0.5) { shuffle_diagram(&mut rng, &d) } else {
            random_diagram(&mut rng, d.graph().clone())
        };
        let (a, b) = (extract_ball(&d, 0, n).unwrap(), extract_ball(&e, 0, n).unwrap());
        let brute = brute_isomorphic(&ball_matrix(&a), &ball_matrix(&b));
        let found = rooted_isomorphic(&a, &b).unwrap();
        assert_eq!(found.is_some(), brute);
        assert_eq!(canonical_code(&a) == canonical_code(&b), brute);
        if let Some(map) = found {
            assert_eq!(map[0], 0);
        }
    }
}

#[test]
fn automorphism_enumeration_counts_match_brute_force() {
    // all root-fixing permutations preserving the matrix
    let count = |g: &Graph| {
        let b = extract_ball(g, 0, g.n()).unwrap();
        let m = ball_matrix(&b);
        let n = m.len();
        let mut total = 0;
        let mut perm: Vec<usize> = (0..n).collect();
        fn rec(perm: &mut Vec<usize>, k: usize, m: &Matrix, total: &mut usize) {
            if k == perm.len() {
                let n = perm.len();
                if (0..n).all(|i| (0..n).all(|j| m[i][j] == m[perm[i]][perm[j]])) {
                    *total += 1;
                }
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                rec(perm, k + 1, m, total);
                perm.swap(k, i);
            }
        }
        rec(&mut perm, 1, &m, &mut total);
        (b, total)
    };
    for g in [Graph::cycle(6), Graph::complete(5), Graph::path(5), Graph::petersen()] {
        let (b, expected) = count(&g);
        assert_eq!(find_isomorphisms(&b, &b, usize::MAX).unwrap().len(), expected);
    }
}
