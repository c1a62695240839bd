//! The `glim-graph-v1` interchange format.

use serde::{Deserialize, Serialize};

use crate::constructions::{FiberedGraph, KnBundle};
use crate::error::{GlimError, Result};
use crate::graph::{Diagram, EdgeLabel, Graph, Label, LocalView, Vertex};
use crate::limits::MarkedGraph;

pub const GRAPH_FORMAT: &str = "glim-graph-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub edge: [Vertex; 2],
    pub label: Label,
    /// `[tail, head]` for oriented labels.
    pub dir: Option<[Vertex; 2]>,
}

/// On-disk graph, optionally carrying labels, fibers, marks and a Hamiltonian cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub version: String,
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<LabelEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<u8>>,
    /// One flag per entry of `edges`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marks: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ham_cycle: Option<Vec<Vertex>>,
}

fn bad(msg: impl Into<String>) -> GlimError {
    GlimError::Format(msg.into())
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> GraphFile {
        GraphFile {
            version: GRAPH_FORMAT.to_string(),
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            labels: None,
            fibers: None,
            marks: None,
            ham_cycle: None,
        }
    }

    pub fn from_diagram(d: &Diagram) -> GraphFile {
        let mut f = GraphFile::from_graph(d.graph());
        f.labels = Some(label_entries(d.graph(), d.labels()));
        f
    }

    pub fn from_fibered(h: &FiberedGraph) -> GraphFile {
        GraphFile::from_graph(&h.graph).with_fibers(h.fiber.clone())
    }

    pub fn from_marked(m: &MarkedGraph) -> GraphFile {
        let mut f = GraphFile::from_graph(LocalView::graph(m));
        f.marks = Some(m.flags().iter().map(|&b| b as u8).collect());
        f
    }

    /// `K_n` with its colouring, fibers and (if built) `C_n`.
    pub fn from_kn(k: &KnBundle) -> GraphFile {
        let labels: Vec<EdgeLabel> = k.colors.iter().map(|&c| EdgeLabel::unoriented(c)).collect();
        let mut f = GraphFile::from_graph(&k.kn).with_fibers(k.fiber.clone());
        f.labels = Some(label_entries(&k.kn, &labels));
        f.ham_cycle = k.cn.clone();
        f
    }

    pub fn with_fibers(mut self, fibers: Vec<u8>) -> GraphFile {
        self.fibers = Some(fibers);
        self
    }

    pub fn with_ham_cycle(mut self, cycle: Vec<Vertex>) -> GraphFile {
        self.ham_cycle = Some(cycle);
        self
    }

    pub fn from_json(text: &str) -> Result<GraphFile> {
        let f: GraphFile = serde_json::from_str(text)?;
        f.validate()?;
        Ok(f)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph files always serialize");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != GRAPH_FORMAT {
            return Err(bad(format!("unsupported version {:?}", self.version)));
        }
        if let Some(&[u, v]) = self.edges.iter().find(|[u, v]| u >= v) {
            return Err(bad(format!("edge [{u}, {v}] must be listed with u < v")));
        }
        let g = self.graph()?;
        if let Some(f) = &self.fibers {
            if f.len() != self.n {
                return Err(bad(format!("{} fiber entries for {} vertices", f.len(), self.n)));
            }
            if let Some(x) = f.iter().find(|&&x| x > 3) {
                return Err(bad(format!("fiber index {x} outside 0..3")));
            }
        }
        if let Some(m) = &self.marks {
            if m.len() != self.edges.len() {
                return Err(bad(format!("{} marks for {} edges", m.len(), self.edges.len())));
            }
            if let Some(x) = m.iter().find(|&&x| x > 1) {
                return Err(bad(format!("mark {x} is not 0 or 1")));
            }
        }
        if let Some(c) = &self.ham_cycle {
            for &v in c {
                g.check_vertex(v)?;
            }
        }
        self.diagram()?;
        Ok(())
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)))
    }

    /// The labelled diagram, when the file carries labels.
    pub fn diagram(&self) -> Result<Option<Diagram>> {
        let Some(entries) = &self.labels else { return Ok(None) };
        let g = self.graph()?;
        if entries.len() != g.edge_count() {
            return Err(bad(format!("{} labels for {} edges", entries.len(), g.edge_count())));
        }
        let mut slot: Vec<Option<EdgeLabel>> = vec![None; g.edge_count()];
        for entry in entries {
            let [u, v] = entry.edge;
            let e = g.edge_id(u, v).ok_or_else(|| bad(format!("label on missing edge [{u}, {v}]")))?;
            if slot[e].is_some() {
                return Err(bad(format!("edge [{u}, {v}] labelled twice")));
            }
            let tail = match entry.dir {
                None => None,
                Some([t, h]) if (t.min(h), t.max(h)) == g.edge(e) => Some(t),
                Some([t, h]) => return Err(bad(format!("direction [{t}, {h}] does not match edge [{u}, {v}]"))),
            };
            slot[e] = Some(EdgeLabel { label: entry.label, tail });
        }
        let labels = slot.into_iter().map(|l| l.expect("every edge labelled once")).collect();
        Diagram::new(g, labels).map(Some)
    }

    /// The marked graph, when the file carries marks.
    pub fn marked(&self) -> Result<Option<MarkedGraph>> {
        let Some(marks) = &self.marks else { return Ok(None) };
        let g = self.graph()?;
        let mut flags = vec![false; g.edge_count()];
        for (&[u, v], &m) in self.edges.iter().zip(marks) {
            flags[g.edge_id(u, v).expect("edge present")] = m == 1;
        }
        MarkedGraph::from_flags(g, flags).map(Some)
    }

    /// Labels take precedence over marks; otherwise the plain graph.
    pub fn view(&self) -> Result<Box<dyn LocalView>> {
        if let Some(d) = self.diagram()? {
            return Ok(Box::new(d));
        }
        if let Some(m) = self.marked()? {
            return Ok(Box::new(m));
        }
        Ok(Box::new(self.graph()?))
    }
}

fn label_entries(g: &Graph, labels: &[EdgeLabel]) -> Vec<LabelEntry> {
    g.edges()
        .iter()
        .zip(labels)
        .map(|(&(u, v), l)| LabelEntry {
            edge: [u, v],
            label: l.label,
            dir: l.tail.map(|t| [t, if t == u { v } else { u }]),
        })
        .collect()
}
