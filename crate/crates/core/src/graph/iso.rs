//! Rooted (labelled) isomorphism search.
//!
//! Both balls are refined together as one disjoint union, so cell colours are
//! directly comparable across the two sides. A branch dies as soon as some
//! cell holds different numbers of vertices from each side; at a discrete
//! leaf the pairing is read off and re-validated edge by edge.

use num_bigint::BigUint;

use super::refine::{individualize, refine, ArcGraph};
use super::{RootedBall, Vertex};
use crate::error::{GlimError, Result};

struct Joint {
    union: ArcGraph,
    n1: usize,
}

enum Flow {
    Continue,
    Stop,
}

impl Joint {
    fn new(a: &ArcGraph, b: &ArcGraph) -> Joint {
        Joint { union: a.union(b), n1: a.n() }
    }

    /// Per-cell side counts agree.
    fn balanced(&self, colors: &[u32]) -> bool {
        let cells = super::refine::cell_count(colors);
        let mut diff = vec![0i64; cells];
        for (v, &c) in colors.iter().enumerate() {
            diff[c as usize] += if v < self.n1 { 1 } else { -1 };
        }
        diff.iter().all(|&d| d == 0)
    }

    fn search<F>(&self, mut colors: Vec<u32>, on_leaf: &mut F) -> Flow
    where
        F: FnMut(Vec<usize>) -> Flow,
    {
        refine(&self.union, &mut colors);
        if !self.balanced(&colors) {
            return Flow::Continue;
        }
        let cells = super::refine::cell_count(&colors);
        let mut size = vec![0usize; cells];
        for &c in &colors {
            size[c as usize] += 1;
        }
        // smallest cell with more than one vertex per side
        let target = (0..cells).filter(|&c| size[c] > 2).min_by_key(|&c| size[c]);
        match target {
            None => {
                let mut by_color = vec![usize::MAX; cells];
                for (v, &c) in colors.iter().enumerate().skip(self.n1) {
                    by_color[c as usize] = v - self.n1;
                }
                let map = colors[..self.n1].iter().map(|&c| by_color[c as usize]).collect();
                on_leaf(map)
            }
            Some(t) => {
                let t = t as u32;
                let v = (0..self.n1).find(|&v| colors[v] == t).expect("balanced cell");
                let candidates: Vec<usize> =
                    (self.n1..colors.len()).filter(|&w| colors[w] == t).collect();
                for w in candidates {
                    let mut child = colors.clone();
                    individualize(&mut child, &[v, w]);
                    if let Flow::Stop = self.search(child, on_leaf) {
                        return Flow::Stop;
                    }
                }
                Flow::Continue
            }
        }
    }
}

fn check_kinds(a: &RootedBall, b: &RootedBall) -> Result<()> {
    if a.is_labelled() != b.is_labelled() {
        return Err(GlimError::MixedPayload);
    }
    Ok(())
}

/// Checks that `map` (vertex of `a` -> vertex of `b`) is a root-preserving
/// bijection preserving adjacency, labels and orientations.
pub fn verify_mapping(a: &RootedBall, b: &RootedBall, map: &[Vertex]) -> bool {
    if a.len() != b.len() || map.len() != a.len() || a.graph.edge_count() != b.graph.edge_count() {
        return false;
    }
    if map[0] != 0 {
        return false;
    }
    let mut seen = vec![false; b.len()];
    for &w in map {
        if w >= b.len() || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    for (e, &(u, v)) in a.graph.edges().iter().enumerate() {
        let Some(f) = b.graph.edge_id(map[u], map[v]) else {
            return false;
        };
        match (&a.labels, &b.labels) {
            (None, None) => {}
            (Some(la), Some(lb)) => {
                let (x, y) = (la[e], lb[f]);
                if x.label != y.label || x.tail.map(|t| map[t]) != y.tail {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Up to `limit` distinct rooted (labelled-)isomorphisms from `a` to `b`.
pub fn find_isomorphisms(a: &RootedBall, b: &RootedBall, limit: usize) -> Result<Vec<Vec<Vertex>>> {
    check_kinds(a, b)?;
    let mut found = Vec::new();
    if limit == 0 || a.len() != b.len() || a.graph.edge_count() != b.graph.edge_count() {
        return Ok(found);
    }
    let (ga, gb) = (ArcGraph::from_ball(a), ArcGraph::from_ball(b));
    let joint = Joint::new(&ga, &gb);
    let colors = joint.union.initial_colors();
    joint.search(colors, &mut |map| {
        if verify_mapping(a, b, &map) {
            found.push(map);
        }
        if found.len() >= limit {
            Flow::Stop
        } else {
            Flow::Continue
        }
    });
    Ok(found)
}

/// A rooted (labelled-)isomorphism from `a` to `b`, if one exists.
pub fn rooted_isomorphic(a: &RootedBall, b: &RootedBall) -> Result<Option<Vec<Vertex>>> {
    Ok(find_isomorphisms(a, b, 1)?.pop())
}

/// Exact order of the group of root-preserving (label-preserving)
/// automorphisms, by orbit-stabiliser: |Aut_P| = |v^Aut_P| * |Aut_{P,v}|.
pub fn rooted_automorphism_count(ball: &RootedBall) -> BigUint {
    let g = ArcGraph::from_ball(ball);
    let joint = Joint::new(&g, &g);
    let n = g.n();
    let mut colors = g.initial_colors();
    let mut order = BigUint::from(1u32);
    loop {
        refine(&g, &mut colors);
        let cells = super::refine::cell_count(&colors);
        if cells == n {
            return order;
        }
        let mut size = vec![0usize; cells];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let target = (0..cells).find(|&c| size[c] > 1).expect("not discrete") as u32;
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let v = cell[0];
        let mut orbit = 1u32;
        for &w in &cell[1..] {
            // is there an automorphism fixing the current partition with v -> w?
            let mut both: Vec<u32> = colors.iter().chain(colors.iter()).copied().collect();
            individualize(&mut both, &[v, n + w]);
            let mut hit = false;
            joint.search(both, &mut |map| {
                if verify_pairing(&g, &map) {
                    hit = true;
                    Flow::Stop
                } else {
                    Flow::Continue
                }
            });
            if hit {
                orbit += 1;
            }
        }
        order *= orbit;
        individualize(&mut colors, &[v]);
    }
}

/// Automorphism check on the arc graph itself (colours and arcs preserved).
fn verify_pairing(g: &ArcGraph, map: &[usize]) -> bool {
    (0..g.n()).all(|v| {
        if g.vcolor[v] != g.vcolor[map[v]] {
            return false;
        }
        let mut img: Vec<(u32, u32)> = g.adj[v].iter().map(|&(w, c)| (map[w as usize] as u32, c)).collect();
        img.sort_unstable();
        img == g.adj[map[v]]
    })
}
