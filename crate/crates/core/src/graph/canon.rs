//! Canonical codes for rooted (labelled) balls.
//!
//! Individualisation-refinement search: every node of the search tree is an
//! equitable ordered partition, children individualise one vertex of the
//! first non-singleton cell, and leaves are discrete partitions, i.e.
//! vertex orderings. The canonical ordering is the leaf minimising
//! `(traces along the path, relabelled graph)`. Subtrees are pruned only when
//! they are provably no better (trace comparison) or images of explored
//! subtrees under automorphisms found during the search.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::refine::ArcGraph;
use super::RootedBall;

/// Canonical string of a rooted ball: equal codes iff rooted
/// (labelled-)isomorphic balls.
///
/// Format `n|adjacency|labels`: vertices are numbered canonically (root is
/// 0), `adjacency` lists for each vertex its higher-numbered neighbours
/// joined by `.`, with lists separated by `;`; `labels` gives the label of
/// every edge in the same order, joined by `.`, with `>`/`<` marking an
/// orientation from the lower/higher endpoint. Plain balls have an empty
/// label part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Code(pub String);

impl Code {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone)]
struct Leaf {
    path: Vec<usize>,
    traces: Vec<Vec<u64>>,
    cert: Vec<u64>,
    /// vertex -> canonical position
    pos: Vec<u32>,
}

impl Leaf {
    fn key(&self) -> (&[Vec<u64>], &[u64]) {
        (&self.traces, &self.cert)
    }
}

struct Search<'a> {
    g: &'a ArcGraph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u32>>,
}

fn certificate(g: &ArcGraph, pos: &[u32]) -> Vec<u64> {
    let n = g.n();
    let mut inv = vec![0usize; n];
    for (v, &p) in pos.iter().enumerate() {
        inv[p as usize] = v;
    }
    let mut cert = Vec::with_capacity(n * 4);
    let mut row = Vec::new();
    for &v in &inv {
        row.clear();
        row.extend(g.adj[v].iter().map(|&(w, c)| ((pos[w as usize] as u64) << 16) | c as u64));
        row.sort_unstable();
        cert.push(g.vcolor[v]);
        cert.push(row.len() as u64);
        cert.extend_from_slice(&row);
    }
    cert
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl<'a> Search<'a> {
    /// Orbit representative map under the generators fixing `path` pointwise.
    fn orbits(&self, path: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        for gen in &self.generators {
            if path.iter().all(|&p| gen[p] as usize == p) {
                for (v, &w) in gen.iter().enumerate() {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w as usize));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    fn record_automorphism(&mut self, from: &Leaf, to_pos: &[u32]) {
        let n = self.g.n();
        let mut inv_to = vec![0u32; n];
        for (v, &p) in to_pos.iter().enumerate() {
            inv_to[p as usize] = v as u32;
        }
        let gen: Vec<u32> = from.pos.iter().map(|&p| inv_to[p as usize]).collect();
        if gen.iter().enumerate().any(|(v, &w)| v as u32 != w) {
            self.generators.push(gen);
        }
    }

    /// Prefix comparison of the current path's traces against the best leaf.
    fn compare_to_best(&self, traces: &[Vec<u64>]) -> Ordering {
        match &self.best {
            None => Ordering::Less,
            Some(best) => {
                let k = traces.len().min(best.traces.len());
                traces[..k].cmp(&best.traces[..k])
            }
        }
    }

    fn leaf(&mut self, colors: &[u32], path: &[usize], traces: &[Vec<u64>]) -> Option<usize> {
        let cert = certificate(self.g, colors);
        let leaf = Leaf { path: path.to_vec(), traces: traces.to_vec(), cert, pos: colors.to_vec() };
        let Some(first) = self.first.take() else {
            self.best = Some(leaf.clone());
            self.first = Some(leaf);
            return None;
        };
        if first.key() == leaf.key() {
            self.record_automorphism(&first, &leaf.pos);
            let back = common_prefix(&first.path, &leaf.path);
            self.first = Some(first);
            return Some(back);
        }
        self.first = Some(first);
        let best = self.best.take().expect("best exists once first does");
        match leaf.key().cmp(&best.key()) {
            Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            Ordering::Equal => {
                self.record_automorphism(&best, &leaf.pos);
                let back = common_prefix(&best.path, &leaf.path);
                self.best = Some(best);
                Some(back)
            }
            Ordering::Greater => {
                self.best = Some(best);
                None
            }
        }
    }

    fn explore(&mut self, part: Partition, path: &mut Vec<usize>, traces: &mut Vec<Vec<u64>>) -> Option<usize> {
        let level = path.len();
        let Some(target) = part.first_nonsingleton() else {
            return self.leaf(part.positions(), path, traces);
        };
        let mut cell: Vec<usize> = part.cell(target).iter().map(|&v| v as usize).collect();
        cell.sort_unstable();

        let mut explored: Vec<usize> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() {
                let orbit = self.orbits(path);
                if explored.iter().any(|&x| orbit[x] == orbit[w]) {
                    continue;
                }
            }
            let mut child = part.clone();
            let s = child.individualize(w);
            let trace = child.refine(self.g, &[s]);
            path.push(w);
            traces.push(trace);
            let back = if self.compare_to_best(traces) == Ordering::Greater {
                None
            } else {
                self.explore(child, path, traces)
            };
            path.pop();
            traces.pop();
            explored.push(w);
            if let Some(j) = back {
                if j < level {
                    return Some(j);
                }
            }
        }
        None
    }
}

/// Canonical vertex ordering: `pos[v]` is the canonical index of `v`.
pub(crate) fn canonical_positions(g: &ArcGraph) -> Vec<u32> {
    let (mut part, starts) = Partition::from_colors(g);
    let trace = part.refine(g, &starts);
    let mut search = Search { g, first: None, best: None, generators: Vec::new() };
    let mut traces = vec![trace];
    search.explore(part, &mut Vec::new(), &mut traces);
    search.best.expect("search reaches at least one leaf").pos
}

/// Canonical code of a rooted ball.
pub fn canonical_code(ball: &RootedBall) -> Code {
    let g = ArcGraph::from_ball(ball);
    let pos = canonical_positions(&g);
    debug_assert_eq!(pos[0], 0, "root must be canonical vertex 0");
    let n = ball.len();
    let mut edges: Vec<(usize, usize, usize)> = ball
        .graph
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let (pu, pv) = (pos[u] as usize, pos[v] as usize);
            (pu.min(pv), pu.max(pv), e)
        })
        .collect();
    edges.sort_unstable();

    let mut text = format!("{n}|");
    let mut i = 0;
    for v in 0..n {
        if v > 0 {
            text.push(';');
        }
        let mut sep = "";
        while i < edges.len() && edges[i].0 == v {
            text.push_str(sep);
            text.push_str(&edges[i].1.to_string());
            sep = ".";
            i += 1;
        }
    }
    text.push('|');
    if let Some(labels) = &ball.labels {
        let mut sep = "";
        for &(lo, _hi, e) in &edges {
            let l = labels[e];
            text.push_str(sep);
            text.push_str(l.label.symbol());
            if let Some(t) = l.tail {
                text.push(if pos[t] as usize == lo { '>' } else { '<' });
            }
            sep = ".";
        }
    }
    Code(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{extract_ball, EdgeLabel, Graph, Label};

    #[test]
    fn single_vertex_balls_share_a_code() {
        let a = extract_ball(&Graph::petersen(), 3, 0).unwrap();
        let b = extract_ball(&Graph::cycle(7), 5, 0).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_eq!(canonical_code(&a).as_str(), "1||");
    }

    #[test]
    fn rooted_paths_on_three_vertices_differ() {
        let p = Graph::path(3);
        let end = extract_ball(&p, 0, 2).unwrap();
        let centre = extract_ball(&p, 1, 2).unwrap();
        assert_ne!(canonical_code(&end), canonical_code(&centre));
        assert_eq!(canonical_code(&centre).as_str(), "3|1.2;;|");
        assert_eq!(canonical_code(&end).as_str(), "3|1;2;|");
    }

    #[test]
    fn orientation_is_encoded() {
        let g = Graph::path(2);
        let out = crate::graph::Diagram::new(g.clone(), vec![EdgeLabel::oriented(Label::A, 0)]).unwrap();
        let inn = crate::graph::Diagram::new(g, vec![EdgeLabel::oriented(Label::A, 1)]).unwrap();
        let c_out = canonical_code(&extract_ball(&out, 0, 1).unwrap());
        let c_in = canonical_code(&extract_ball(&inn, 0, 1).unwrap());
        assert_eq!(c_out.as_str(), "2|1;|a>");
        assert_eq!(c_in.as_str(), "2|1;|a<");
    }

    #[test]
    fn symmetric_trees_do_not_blow_up() {
        // complete binary tree of depth 9 (1023 vertices), huge automorphism group
        let n = 1023;
        let g = Graph::new(n, (1..n).map(|v| ((v - 1) / 2, v))).unwrap();
        let ball = extract_ball(&g, 0, 9).unwrap();
        let code = canonical_code(&ball);
        let relabelled = {
            let perm: Vec<usize> = (0..n).rev().collect();
            Graph::new(n, g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
        };
        let other = extract_ball(&relabelled, n - 1, 9).unwrap();
        assert_eq!(code, canonical_code(&other));
    }
}
