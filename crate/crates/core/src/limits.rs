//! Ball censuses and the local statistics built on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::FiberedGraph;
use crate::error::{GlimError, Result};
use crate::graph::{canonical_code, extract_ball, Code, EdgeId, EdgeLabel, Graph, Label, LocalView, RootedBall, Vertex};
use crate::rng::stream;

/// A graph with a distinguished edge subset, seen as a two-colour edge labelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGraph {
    graph: Graph,
    marked: Vec<bool>,
}

impl MarkedGraph {
    pub fn new(graph: Graph, marked_edges: &[EdgeId]) -> Result<MarkedGraph> {
        let mut marked = vec![false; graph.edge_count()];
        for &e in marked_edges {
            if e >= marked.len() {
                return Err(GlimError::InvalidParameter(format!("marked edge {e} out of range")));
            }
            marked[e] = true;
        }
        Ok(MarkedGraph { graph, marked })
    }

    pub fn from_flags(graph: Graph, marked: Vec<bool>) -> Result<MarkedGraph> {
        if marked.len() != graph.edge_count() {
            return Err(GlimError::InvalidParameter("one mark flag per edge is required".into()));
        }
        Ok(MarkedGraph { graph, marked })
    }

    pub fn is_marked(&self, e: EdgeId) -> bool {
        self.marked[e]
    }

    pub fn flags(&self) -> &[bool] {
        &self.marked
    }

    pub fn marked_edges(&self) -> Vec<EdgeId> {
        (0..self.marked.len()).filter(|&e| self.marked[e]).collect()
    }
}

impl LocalView for MarkedGraph {
    fn graph(&self) -> &Graph {
        &self.graph
    }
    fn edge_label(&self, e: EdgeId) -> Option<EdgeLabel> {
        Some(EdgeLabel::unoriented(if self.marked[e] { Label::Marked } else { Label::Unmarked }))
    }
    fn is_labelled(&self) -> bool {
        true
    }
}

/// Multiset of ball codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallCensus {
    pub radius: usize,
    pub counts: BTreeMap<Code, u64>,
    pub total: u64,
    /// `true` when vertices were sampled rather than enumerated.
    pub sampled: bool,
}

impl BallCensus {
    fn from_codes(radius: usize, codes: Vec<Code>, sampled: bool) -> BallCensus {
        let total = codes.len() as u64;
        let mut counts = BTreeMap::new();
        for c in codes {
            *counts.entry(c).or_insert(0) += 1;
        }
        BallCensus { radius, counts, total, sampled }
    }

    pub fn count(&self, code: &Code) -> u64 {
        self.counts.get(code).copied().unwrap_or(0)
    }

    pub fn frequency(&self, code: &Code) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count(code) as f64 / self.total as f64
        }
    }

    /// Two-sided 95% Wilson score interval for the frequency of `code`.
    pub fn interval(&self, code: &Code) -> (f64, f64) {
        wilson_interval(self.count(code), self.total, 1.959_963_984_540_054)
    }

    /// `code,count,frequency` rows sorted by code, with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("code,count,frequency\n");
        for (code, &count) in &self.counts {
            let f = count as f64 / self.total as f64;
            writeln!(out, "{code},{count},{f}").expect("writing to a string");
        }
        out
    }
}

/// Wilson score interval for `k` successes out of `n` trials.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let (k, n) = (k as f64, n as f64);
    let p = k / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

fn codes_at<S: LocalView + ?Sized>(source: &S, r: usize, vertices: &[Vertex]) -> Result<Vec<Code>> {
    vertices
        .par_iter()
        .map(|&v| extract_ball(source, v, r).map(|b| canonical_code(&b)))
        .collect()
}

/// Code of every vertex's radius-`r` ball, indexed by vertex.
pub fn vertex_codes<S: LocalView + ?Sized>(source: &S, r: usize) -> Result<Vec<Code>> {
    let all: Vec<Vertex> = (0..source.graph().n()).collect();
    codes_at(source, r, &all)
}

/// Exhaustive census over all vertices.
pub fn ball_census<S: LocalView + ?Sized>(source: &S, r: usize) -> Result<BallCensus> {
    Ok(BallCensus::from_codes(r, vertex_codes(source, r)?, false))
}

/// Census over the given vertices only.
pub fn ball_census_at<S: LocalView + ?Sized>(source: &S, r: usize, vertices: &[Vertex]) -> Result<BallCensus> {
    Ok(BallCensus::from_codes(r, codes_at(source, r, vertices)?, false))
}

/// Census over `samples` vertices drawn uniformly with replacement.
pub fn sampled_census<S: LocalView + ?Sized>(source: &S, r: usize, samples: usize, seed: u64) -> Result<BallCensus> {
    let n = source.graph().n();
    if n == 0 {
        return Err(GlimError::InvalidParameter("cannot sample from an empty graph".into()));
    }
    let mut rng = stream(seed, "census/sample");
    let picks: Vec<Vertex> = (0..samples).map(|_| rng.gen_range(0..n)).collect();
    Ok(BallCensus::from_codes(r, codes_at(source, r, &picks)?, true))
}

/// Total variation distance between normalised censuses.
pub fn census_tv_distance(c1: &BallCensus, c2: &BallCensus) -> Result<f64> {
    if c1.radius != c2.radius {
        return Err(GlimError::RadiusMismatch(c1.radius, c2.radius));
    }
    let codes: BTreeSet<&Code> = c1.counts.keys().chain(c2.counts.keys()).collect();
    let sum: f64 = codes.into_iter().map(|c| (c1.frequency(c) - c2.frequency(c)).abs()).sum();
    Ok((sum / 2.0).clamp(0.0, 1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoodFraction {
    pub fraction: f64,
    pub good: Vec<Vertex>,
}

/// Vertices whose radius-`r` ball has the same code as `limit` (`r` its radius).
pub fn good_fraction<S: LocalView + ?Sized>(g: &S, limit: &RootedBall) -> Result<GoodFraction> {
    if g.is_labelled() != limit.is_labelled() {
        return Err(GlimError::MixedPayload);
    }
    let target = canonical_code(limit);
    let codes = vertex_codes(g, limit.radius())?;
    let good: Vec<Vertex> = (0..codes.len()).filter(|&v| codes[v] == target).collect();
    let n = codes.len().max(1);
    Ok(GoodFraction { fraction: good.len() as f64 / n as f64, good })
}

/// Whether the radius-`r` ball of each vertex is a tree.
pub fn tree_ball_vertices(g: &Graph, r: usize) -> Vec<bool> {
    (0..g.n())
        .into_par_iter()
        .map(|v| {
            let b = extract_ball(g, v, r).expect("vertex in range");
            b.graph().edge_count() + 1 == b.len()
        })
        .collect()
}

/// Per host vertex: whether the ball of its base vertex in the base graph is a tree.
pub fn base_tree_vertices(host: &FiberedGraph, r: usize) -> Vec<bool> {
    let base = tree_ball_vertices(&host.base, r);
    host.base_of.iter().map(|&u| base[u]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedViolation {
    pub vertex: Vertex,
    pub property: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedReport {
    pub radius: usize,
    pub vertices: usize,
    /// Vertices whose base ball is a tree, where the path check applies.
    pub tree_vertices: usize,
    pub violations: Vec<MarkedViolation>,
}

impl MarkedReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Local checks of the marked subgraph against the fiber structure:
/// every vertex has exactly two marked edges, one vertical and one inside
/// its fiber; and where the base ball is a tree, the marked edges of the
/// ball around a vertex form a simple path with the vertex in its interior.
pub fn marked_ball_properties(k: &MarkedGraph, host: &FiberedGraph, r: usize) -> Result<MarkedReport> {
    if k.graph != host.graph {
        return Err(GlimError::Precondition("marked graph and fibered host differ".into()));
    }
    let g = &k.graph;
    let mut marked_deg = vec![0usize; g.n()];
    for e in k.marked_edges() {
        let (u, v) = g.edge(e);
        marked_deg[u] += 1;
        marked_deg[v] += 1;
    }
    if g.n() == 0 || marked_deg.iter().any(|&d| d != 2) {
        return Err(GlimError::Precondition("marked edges must form a spanning 2-regular subgraph".into()));
    }
    let tree = base_tree_vertices(host, r);
    let per_vertex: Vec<Vec<MarkedViolation>> = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let mut out = Vec::new();
            let marked: Vec<EdgeId> = g.incident(v).iter().map(|&(_, e)| e).filter(|&e| k.is_marked(e)).collect();
            let vertical = marked.iter().filter(|&&e| host.is_vertical(e)).count();
            if vertical != 1 {
                out.push(MarkedViolation {
                    vertex: v,
                    property: "alternation",
                    detail: format!("{vertical} of the 2 marked edges are vertical"),
                });
            }
            if tree[v] {
                if let Some(detail) = marked_path_defect(k, v, r) {
                    out.push(MarkedViolation { vertex: v, property: "path", detail });
                }
            }
            out
        })
        .collect();
    Ok(MarkedReport {
        radius: r,
        vertices: g.n(),
        tree_vertices: tree.iter().filter(|&&t| t).count(),
        violations: per_vertex.into_iter().flatten().collect(),
    })
}

/// Why the marked component of the root in the radius-`r` ball is not a
/// simple path through the root, if it is not.
fn marked_path_defect(k: &MarkedGraph, v: Vertex, r: usize) -> Option<String> {
    let ball = extract_ball(k, v, r).expect("vertex in range");
    let labels = ball.labels().expect("marked balls are labelled");
    let bg = ball.graph();
    let marked_nbrs = |x: Vertex| -> Vec<Vertex> {
        bg.incident(x).iter().filter(|&&(_, e)| labels[e].label == Label::Marked).map(|&(y, _)| y).collect()
    };
    let mut seen = vec![false; ball.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let (mut verts, mut degree_sum) = (0usize, 0usize);
    while let Some(x) = stack.pop() {
        let nb = marked_nbrs(x);
        if nb.len() > 2 {
            return Some(format!("ball vertex {x} has {} marked edges", nb.len()));
        }
        verts += 1;
        degree_sum += nb.len();
        for y in nb {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if degree_sum / 2 != verts - 1 {
        return Some("marked edges close a cycle inside the ball".into());
    }
    let root_deg = marked_nbrs(0).len();
    if root_deg != 2 {
        return Some(format!("root has {root_deg} marked edges inside the ball"));
    }
    None
}
