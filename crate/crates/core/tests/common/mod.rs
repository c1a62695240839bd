//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the code it is used to check beyond building inputs.
#![allow(dead_code)]

use std::collections::BTreeMap;

use glim_core::graph::{canonical_code, extract_ball, Diagram, EdgeLabel, Graph, Label, LocalView, RootedBall};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand::seq::SliceRandom;
use rand::Rng;

/// Edge-relation matrix: 0 for no edge, otherwise an entry that encodes the
/// label and, for oriented labels, which end is the tail.
pub type Matrix = Vec<Vec<u16>>;

pub fn matrix(g: &Graph, labels: Option<&[EdgeLabel]>) -> Matrix {
    let n = g.n();
    let mut m = vec![vec![0u16; n]; n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (fwd, back) = match labels.map(|l| l[e]) {
            None => (1, 1),
            Some(EdgeLabel { label, tail: None }) => (2 + 3 * label as u16, 2 + 3 * label as u16),
            Some(EdgeLabel { label, tail: Some(t) }) => {
                let (out, inn) = (3 + 3 * label as u16, 4 + 3 * label as u16);
                if t == u {
                    (out, inn)
                } else {
                    (inn, out)
                }
            }
        };
        m[u][v] = fwd;
        m[v][u] = back;
    }
    m
}

pub fn ball_matrix(b: &RootedBall) -> Matrix {
    matrix(b.graph(), b.labels())
}

/// Lexicographically least relabelled matrix over all permutations fixing
/// vertex 0: two rooted graphs are isomorphic iff these agree.
pub fn brute_canonical(m: &Matrix) -> Vec<u16> {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u16>> = None;
    permute_rest(&mut perm, 1, &mut |p| {
        let flat = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m[p[i]][p[j]]);
        match &best {
            Some(b) if flat.clone().cmp(b.iter().copied()) != std::cmp::Ordering::Less => {}
            _ => best = Some(flat.collect()),
        }
    });
    let mut out = vec![n as u16];
    out.extend(best.unwrap_or_default());
    out
}

fn permute_rest(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k >= perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_rest(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Whether some root-fixing bijection carries `a` onto `b`.
pub fn brute_isomorphic(a: &Matrix, b: &Matrix) -> bool {
    a.len() == b.len() && brute_canonical(a) == brute_canonical(b)
}

/// Independence number by dynamic programming over all vertex subsets.
pub fn brute_alpha(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 24);
    let nbr: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w)).collect();
    let mut indep = vec![false; 1 << n];
    indep[0] = true;
    let mut best = 0;
    for s in 1usize..1 << n {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        indep[s] = indep[rest] && nbr[low] & rest as u32 == 0;
        if indep[s] {
            best = best.max(s.count_ones() as usize);
        }
    }
    best
}

/// Shortest cycle by enumerating simple paths from each start vertex
/// through larger-numbered vertices only.
pub fn brute_girth(g: &Graph) -> Option<usize> {
    fn walk(g: &Graph, start: usize, at: usize, len: usize, on: &mut Vec<bool>, best: &mut Option<usize>) {
        if best.is_some_and(|b| len + 1 >= b) {
            return;
        }
        for w in g.neighbors(at) {
            if w == start && len >= 2 {
                *best = Some(best.map_or(len + 1, |b| b.min(len + 1)));
            } else if w > start && !on[w] {
                on[w] = true;
                walk(g, start, w, len + 1, on, best);
                on[w] = false;
            }
        }
    }
    let mut best = None;
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        on[s] = true;
        walk(g, s, s, 0, &mut on, &mut best);
        on[s] = false;
    }
    best
}

/// Reduced words over `a`, `A = a^-1`, `b` of length at most `r`.
pub fn tree_words(r: usize) -> Vec<Vec<char>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &frontier {
            for x in ['a', 'A', 'b'] {
                let cancels = matches!((w.last(), x), (Some('a'), 'A') | (Some('A'), 'a') | (Some('b'), 'b'));
                if !cancels {
                    let mut v: Vec<char> = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The radius-`r` ball of the labelled limit around `(e, 0)`, written down
/// from coordinates: vertices `(w, j)` with `|w| + dist_C4(0, j) <= r`.
/// Vertex 0 is the root.
pub fn coordinate_limit_ball(r: usize) -> Diagram {
    let mut verts: Vec<(Vec<char>, usize)> = Vec::new();
    for w in tree_words(r) {
        for j in 0..4 {
            if w.len() + j.min(4 - j) <= r {
                verts.push((w.clone(), j));
            }
        }
    }
    let index = |w: &[char], j: usize| verts.iter().position(|(x, i)| x == w && *i == j);
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (v, (w, j)) in verts.iter().enumerate() {
        for x in ['a', 'b'] {
            let mut wx = w.clone();
            if w.last() == Some(&if x == 'a' { 'A' } else { 'b' }) {
                wx.pop();
            } else {
                wx.push(x);
            }
            if let Some(u) = index(&wx, *j) {
                if x == 'a' {
                    edges.push((v, u));
                    labels.push(EdgeLabel::oriented(Label::A, v));
                } else if v < u {
                    edges.push((v, u));
                    labels.push(EdgeLabel::unoriented(Label::B));
                }
            }
        }
        if let Some(u) = index(w, (j + 1) % 4) {
            // c when the tree word length plus the lower fiber index is even
            let l = if (w.len() + j) % 2 == 0 { Label::C } else { Label::D };
            edges.push((v, u));
            labels.push(EdgeLabel::unoriented(l));
        }
    }
    let g = Graph::new(verts.len(), edges.iter().copied()).unwrap();
    // Graph::new sorts edges, so reattach labels by endpoint pair
    let mut sorted = vec![EdgeLabel::unoriented(Label::B); g.edge_count()];
    for (&(u, v), l) in edges.iter().zip(&labels) {
        sorted[g.edge_id(u, v).unwrap()] = *l;
    }
    Diagram::new(g, sorted).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random labels drawn from an oriented `a` and the involutions `b`, `c`.
pub fn random_diagram(rng: &mut impl Rng, g: Graph) -> Diagram {
    let labels = g
        .edges()
        .iter()
        .map(|&(u, v)| match rng.gen_range(0..3) {
            0 => EdgeLabel::oriented(Label::A, if rng.gen_bool(0.5) { u } else { v }),
            1 => EdgeLabel::unoriented(Label::B),
            _ => EdgeLabel::unoriented(Label::C),
        })
        .collect();
    Diagram::new(g, labels).unwrap()
}

/// Relabel all vertices but 0 by a random permutation.
pub fn shuffle_diagram(rng: &mut impl Rng, d: &Diagram) -> Diagram {
    let n = d.graph().n();
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    let p: Vec<usize> = std::iter::once(0).chain(rest).collect();
    let edges: Vec<(usize, usize)> = d.graph().edges().iter().map(|&(u, v)| (p[u], p[v])).collect();
    let g = Graph::new(n, edges.iter().copied()).unwrap();
    let mut labels = vec![EdgeLabel::unoriented(Label::B); g.edge_count()];
    for (e, &(u, v)) in edges.iter().enumerate() {
        let l = d.label(e);
        labels[g.edge_id(u, v).unwrap()] = EdgeLabel { label: l.label, tail: l.tail.map(|t| p[t]) };
    }
    Diagram::new(g, labels).unwrap()
}

/// Number of code classes that split a brute-force class or merge two of them.
pub fn discrepancies(items: &[(String, Vec<u16>)]) -> usize {
    let mut by_code: BTreeMap<&str, &[u16]> = BTreeMap::new();
    let mut by_brute: BTreeMap<&[u16], &str> = BTreeMap::new();
    let mut bad = 0;
    for (code, brute) in items {
        if *by_code.entry(code).or_insert(brute) != &brute[..] {
            bad += 1;
        }
        if *by_brute.entry(brute).or_insert(code) != code {
            bad += 1;
        }
    }
    bad
}

fn coded<S: LocalView>(source: &S) -> (String, Vec<u16>) {
    let b = extract_ball(source, 0, source.graph().n()).unwrap();
    (canonical_code(&b).0, brute_canonical(&ball_matrix(&b)))
}

/// Random rooted graphs and diagrams on at most 8 vertices, each paired with
/// a shuffled copy so that isomorphic pairs are common.
pub fn random_code_items(count: usize, seed: u64) -> Vec<(String, Vec<u16>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::with_capacity(count);
    while items.len() < count {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let d = random_diagram(&mut rng, g.clone());
        let shuffled = shuffle_diagram(&mut rng, &d);
        if rng.gen_bool(0.5) {
            items.push(coded(&g));
            items.push(coded(shuffled.graph()));
        } else {
            items.push(coded(&d));
            items.push(coded(&shuffled));
        }
    }
    items.truncate(count);
    items
}

/// Every graph on `1..=max_n` vertices, and every orientation pattern of
/// `a`-edges, rooted at vertex 0 (each reduced to the root's component).
pub fn exhaustive_code_items(max_n: usize) -> (Vec<(String, Vec<u16>)>, Vec<(String, Vec<u16>)>) {
    let (mut plain, mut oriented) = (Vec::new(), Vec::new());
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            plain.push(coded(&Graph::new(n, edges).unwrap()));
        }
        let total = 3usize.pow(pairs.len() as u32);
        for mut code in 0..total {
            let mut edges = Vec::new();
            let mut tails = Vec::new();
            for &(u, v) in &pairs {
                match code % 3 {
                    1 => {
                        edges.push((u, v));
                        tails.push(u);
                    }
                    2 => {
                        edges.push((u, v));
                        tails.push(v);
                    }
                    _ => {}
                }
                code /= 3;
            }
            // pairs are listed in sorted order, so edge ids follow `edges`
            let g = Graph::new(n, edges).unwrap();
            let labels = tails.into_iter().map(|t| EdgeLabel::oriented(Label::A, t)).collect();
            oriented.push(coded(&Diagram::new(g, labels).unwrap()));
        }
    }
    (plain, oriented)
}

/// Census of marked `(K_n, C_n)` balls at vertices whose base ball is a tree.
pub fn marked_tree_census(n: usize, r: usize, seed: u64) -> glim_core::limits::BallCensus {
    use glim_core::constructions::{build_kn, hamiltonian_cycle_kn, random_bipartite_hamiltonian};
    use glim_core::limits::{ball_census_at, base_tree_vertices, MarkedGraph};
    let b = random_bipartite_hamiltonian(n, seed).unwrap();
    let mut k = build_kn(&b).unwrap();
    let cycle = hamiltonian_cycle_kn(&mut k, &b).unwrap();
    let host = k.fibered().unwrap();
    let marked = MarkedGraph::new(k.kn.clone(), &cycle).unwrap();
    let tree = base_tree_vertices(&host, r);
    let at: Vec<usize> = (0..tree.len()).filter(|&v| tree[v]).collect();
    ball_census_at(&marked, r, &at).unwrap()
}
