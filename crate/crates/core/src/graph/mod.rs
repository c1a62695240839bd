//! Graphs, edge-labelled diagrams and the local machinery built on them:
//! rooted balls, exact rooted isomorphism, canonical codes, girth and the
//! ultrametric on rooted balls.

mod ball;
mod canon;
mod girth;
mod iso;
mod metric;
pub(crate) mod partition;
pub(crate) mod refine;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GlimError, Result};

pub use ball::{extract_ball, RootedBall};
pub use canon::{canonical_code, Code};
pub use girth::{girth, Girth};
pub use iso::{
    find_isomorphisms, rooted_automorphism_count, rooted_isomorphic, verify_mapping,
};
pub use metric::{rooted_distance, RootedDistance};

pub type Vertex = usize;
pub type EdgeId = usize;

/// Simple undirected graph on `0..n`.
///
/// Edges are stored sorted with `u < v`; an edge's id is its index in that
/// order. Adjacency lists are sorted by neighbour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GlimError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GlimError::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GlimError::ParallelEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// Incident `(neighbour, edge id)` pairs of `v`, sorted by neighbour.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(GlimError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances(0).iter().all(Option::is_some)
    }

    pub fn is_independent(&self, set: &[Vertex]) -> Option<(Vertex, Vertex)> {
        let mut member = vec![false; self.n];
        for &v in set {
            member[v] = true;
        }
        self.edges.iter().copied().find(|&(u, v)| member[u] && member[v])
    }

    /// Induced subgraph on `vertices` (new ids follow the slice order).
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut local = std::collections::HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            local.insert(v, i);
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.neighbors(v) {
                if let Some(&j) = local.get(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Two-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u]?;
                for w in self.neighbors(u) {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        side.into_iter().collect()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, edges).expect("Petersen graph is simple")
    }
}

/// Edge labels. `a` is the only non-involutive generator; everything else is
/// drawn unoriented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    A,
    B,
    C,
    D,
    Blue,
    Yellow,
    Plain,
    Marked,
    Unmarked,
}

impl Label {
    pub const ALL: [Label; 9] = [
        Label::A,
        Label::B,
        Label::C,
        Label::D,
        Label::Blue,
        Label::Yellow,
        Label::Plain,
        Label::Marked,
        Label::Unmarked,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Label::A => "a",
            Label::B => "b",
            Label::C => "c",
            Label::D => "d",
            Label::Blue => "blue",
            Label::Yellow => "yellow",
            Label::Plain => "plain",
            Label::Marked => "marked",
            Label::Unmarked => "unmarked",
        }
    }

    pub fn is_involutive(self) -> bool {
        self != Label::A
    }

    pub(crate) fn index(self) -> u32 {
        self as u32
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Label {
    type Err = GlimError;

    fn from_str(s: &str) -> Result<Self> {
        Label::ALL
            .into_iter()
            .find(|l| l.symbol() == s)
            .ok_or_else(|| GlimError::InvalidLabel(s.to_string()))
    }
}

/// Label of one edge; `tail` is set exactly when the label is oriented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeLabel {
    pub label: Label,
    pub tail: Option<Vertex>,
}

impl EdgeLabel {
    pub fn unoriented(label: Label) -> Self {
        EdgeLabel { label, tail: None }
    }

    pub fn oriented(label: Label, tail: Vertex) -> Self {
        EdgeLabel { label, tail: Some(tail) }
    }
}

/// Graph with one label per edge and orientations on non-involutive labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    graph: Graph,
    labels: Vec<EdgeLabel>,
}

impl Diagram {
    pub fn new(graph: Graph, labels: Vec<EdgeLabel>) -> Result<Self> {
        if labels.len() != graph.edge_count() {
            return Err(GlimError::InvalidLabel(format!(
                "{} labels for {} edges",
                labels.len(),
                graph.edge_count()
            )));
        }
        for (e, l) in labels.iter().enumerate() {
            let (u, v) = graph.edge(e);
            match (l.label.is_involutive(), l.tail) {
                (true, None) => {}
                (false, Some(t)) if t == u || t == v => {}
                (true, Some(_)) => {
                    return Err(GlimError::InvalidLabel(format!(
                        "involutive label {} on edge {{{u}, {v}}} must be unoriented",
                        l.label
                    )))
                }
                (false, _) => {
                    return Err(GlimError::InvalidLabel(format!(
                        "label {} on edge {{{u}, {v}}} needs an orientation from one of its endpoints",
                        l.label
                    )))
                }
            }
        }
        Ok(Diagram { graph, labels })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[EdgeLabel] {
        &self.labels
    }

    pub fn label(&self, e: EdgeId) -> EdgeLabel {
        self.labels[e]
    }
}

/// Anything a rooted ball can be cut out of.
pub trait LocalView: Sync {
    fn graph(&self) -> &Graph;
    /// `None` for plain graphs.
    fn edge_label(&self, e: EdgeId) -> Option<EdgeLabel>;
    fn is_labelled(&self) -> bool;
}

impl LocalView for Graph {
    fn graph(&self) -> &Graph {
        self
    }
    fn edge_label(&self, _e: EdgeId) -> Option<EdgeLabel> {
        None
    }
    fn is_labelled(&self) -> bool {
        false
    }
}

impl LocalView for Diagram {
    fn graph(&self) -> &Graph {
        &self.graph
    }
    fn edge_label(&self, e: EdgeId) -> Option<EdgeLabel> {
        Some(self.labels[e])
    }
    fn is_labelled(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_parallel_edges_and_range_errors() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(GlimError::SelfLoop(1))));
        assert!(matches!(Graph::new(3, [(0, 1), (1, 0)]), Err(GlimError::ParallelEdge(0, 1))));
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(GlimError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn adjacency_matches_edge_set() {
        let g = Graph::petersen();
        assert_eq!(g.edge_count(), 15);
        assert!(g.is_regular(3));
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_id(u, v), Some(id));
            assert_eq!(g.edge_id(v, u), Some(id));
        }
        let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn diagram_orientation_rules() {
        let g = Graph::path(3);
        let ok = Diagram::new(
            g.clone(),
            vec![EdgeLabel::oriented(Label::A, 1), EdgeLabel::unoriented(Label::B)],
        );
        assert!(ok.is_ok());
        let bad = Diagram::new(
            g.clone(),
            vec![EdgeLabel::unoriented(Label::A), EdgeLabel::unoriented(Label::B)],
        );
        assert!(bad.is_err());
        let bad = Diagram::new(
            g,
            vec![EdgeLabel::oriented(Label::A, 0), EdgeLabel::oriented(Label::C, 1)],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn label_symbols_round_trip() {
        for l in Label::ALL {
            assert_eq!(l.symbol().parse::<Label>().unwrap(), l);
        }
        assert!("e".parse::<Label>().is_err());
    }

    #[test]
    fn bipartition_detects_odd_cycles() {
        assert!(Graph::cycle(6).bipartition().is_some());
        assert!(Graph::cycle(5).bipartition().is_none());
    }
}
