use std::collections::{HashMap, VecDeque};

use super::{Diagram, EdgeLabel, Graph, LocalView, Vertex};
use crate::error::{GlimError, Result};

/// Induced sub(di)graph within distance `radius` of a root.
///
/// Local vertex ids are assigned in breadth-first order, so the root is
/// always local vertex 0 and `dist` is non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedBall {
    pub(crate) graph: Graph,
    pub(crate) labels: Option<Vec<EdgeLabel>>,
    pub(crate) radius: usize,
    pub(crate) dist: Vec<usize>,
    pub(crate) origin: Vec<Vertex>,
}

impl RootedBall {
    /// Assemble a ball from parts and validate it.
    pub fn from_parts(
        graph: Graph,
        labels: Option<Vec<EdgeLabel>>,
        radius: usize,
        origin: Vec<Vertex>,
    ) -> Result<Self> {
        if graph.n() == 0 {
            return Err(GlimError::InvalidBall("empty ball".into()));
        }
        if origin.len() != graph.n() {
            return Err(GlimError::InvalidBall("origin map has wrong length".into()));
        }
        if let Some(l) = &labels {
            Diagram::new(graph.clone(), l.clone())?;
        }
        let dist: Vec<usize> = graph
            .distances(0)
            .into_iter()
            .map(|d| d.ok_or_else(|| GlimError::InvalidBall("ball is disconnected".into())))
            .collect::<Result<_>>()?;
        let ball = RootedBall { graph, labels, radius, dist, origin };
        ball.validate()?;
        Ok(ball)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> Option<&[EdgeLabel]> {
        self.labels.as_deref()
    }

    pub fn is_labelled(&self) -> bool {
        self.labels.is_some()
    }

    pub fn root(&self) -> Vertex {
        0
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn dist(&self) -> &[usize] {
        &self.dist
    }

    pub fn len(&self) -> usize {
        self.graph.n()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.n() == 0
    }

    /// Source vertex of each local vertex.
    pub fn origin(&self) -> &[Vertex] {
        &self.origin
    }

    pub fn diagram(&self) -> Option<Diagram> {
        self.labels
            .as_ref()
            .map(|l| Diagram::new(self.graph.clone(), l.clone()).expect("ball labels are valid"))
    }

    /// The same ball with labels dropped.
    pub fn unlabelled(&self) -> RootedBall {
        RootedBall { labels: None, ..self.clone() }
    }

    /// Sub-ball of smaller radius around the same root.
    pub fn truncate(&self, radius: usize) -> RootedBall {
        let ball = extract_ball(&Sub(self), 0, radius).expect("root is in range");
        RootedBall {
            origin: ball.origin.iter().map(|&v| self.origin[v]).collect(),
            ..ball
        }
    }

    /// Recomputes distances breadth-first and checks the structural invariants.
    pub fn validate(&self) -> Result<()> {
        let fresh = self.graph.distances(0);
        if fresh.len() != self.dist.len() {
            return Err(GlimError::InvalidBall("distance map has wrong length".into()));
        }
        for (v, (&d, f)) in self.dist.iter().zip(&fresh).enumerate() {
            match f {
                None => return Err(GlimError::InvalidBall(format!("vertex {v} unreachable"))),
                Some(f) if *f != d => {
                    return Err(GlimError::InvalidBall(format!(
                        "vertex {v}: stored distance {d}, recomputed {f}"
                    )))
                }
                Some(_) if d > self.radius => {
                    return Err(GlimError::InvalidBall(format!(
                        "vertex {v} at distance {d} exceeds radius {}",
                        self.radius
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

struct Sub<'a>(&'a RootedBall);

impl LocalView for Sub<'_> {
    fn graph(&self) -> &Graph {
        &self.0.graph
    }
    fn edge_label(&self, e: usize) -> Option<EdgeLabel> {
        self.0.labels.as_ref().map(|l| l[e])
    }
    fn is_labelled(&self) -> bool {
        self.0.labels.is_some()
    }
}

/// Extract the radius-`r` ball around `v`, inheriting labels and orientations.
pub fn extract_ball<S: LocalView + ?Sized>(source: &S, v: Vertex, r: usize) -> Result<RootedBall> {
    let g = source.graph();
    g.check_vertex(v)?;
    let mut local: HashMap<Vertex, usize> = HashMap::new();
    let mut origin = vec![v];
    let mut dist = vec![0];
    local.insert(v, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if dist[i] == r {
            continue;
        }
        for w in g.neighbors(origin[i]) {
            if let std::collections::hash_map::Entry::Vacant(slot) = local.entry(w) {
                slot.insert(origin.len());
                queue.push_back(origin.len());
                origin.push(w);
                dist.push(dist[i] + 1);
            }
        }
    }

    let labelled = source.is_labelled();
    let mut edges = Vec::new();
    let mut edge_labels = Vec::new();
    for (i, &x) in origin.iter().enumerate() {
        for &(y, e) in g.incident(x) {
            if let Some(&j) = local.get(&y) {
                if i < j {
                    edges.push(((i, j), e));
                }
            }
        }
    }
    edges.sort_unstable();
    let graph = Graph::new(origin.len(), edges.iter().map(|&(p, _)| p))
        .expect("induced subgraph of a simple graph is simple");
    if labelled {
        for &(_, e) in &edges {
            let l = source
                .edge_label(e)
                .ok_or(GlimError::IncompleteLabelling(e))?;
            edge_labels.push(EdgeLabel { label: l.label, tail: l.tail.map(|t| local[&t]) });
        }
    }
    Ok(RootedBall {
        graph,
        labels: labelled.then_some(edge_labels),
        radius: r,
        dist,
        origin,
    })
}
