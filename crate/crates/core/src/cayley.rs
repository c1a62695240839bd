//! Balls of the limit objects: the 3-regular tree as the Cayley diagram of
//! `Z * Z_2 = <a, b | b^2>`, the product `T x C4` and its Cayley diagram
//! labelling with `c`/`d` on the vertical 4-cycles, and relator checking
//! against a presentation.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GlimError, Result};
use crate::graph::{extract_ball, Diagram, EdgeLabel, Graph, Label, RootedBall, Vertex};

/// Whether a generated ball carries labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Graph,
    Diagram,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeLetter {
    A,
    AInv,
    B,
}

impl TreeLetter {
    pub const ALL: [TreeLetter; 3] = [TreeLetter::A, TreeLetter::AInv, TreeLetter::B];

    fn inverse(self) -> TreeLetter {
        match self {
            TreeLetter::A => TreeLetter::AInv,
            TreeLetter::AInv => TreeLetter::A,
            TreeLetter::B => TreeLetter::B,
        }
    }
}

/// Reduced word over `a, a^-1, b`: a vertex of the tree `T`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeWord(Vec<TreeLetter>);

impl TreeWord {
    pub fn root() -> Self {
        TreeWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[TreeLetter] {
        &self.0
    }

    /// Right multiplication followed by free reduction.
    pub fn times(&self, x: TreeLetter) -> TreeWord {
        let mut w = self.0.clone();
        if w.last() == Some(&x.inverse()) {
            w.pop();
        } else {
            w.push(x);
        }
        TreeWord(w)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[1] != p[0].inverse())
    }

    /// Bipartition class of the tree.
    pub fn parity(&self) -> usize {
        self.0.len() % 2
    }
}

impl fmt::Display for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            f.write_str(match l {
                TreeLetter::A => "a",
                TreeLetter::AInv => "A",
                TreeLetter::B => "b",
            })?;
        }
        Ok(())
    }
}

/// Label of the tree edge `{t, t x}`; `a`-edges point from `t` to `t a`.
fn tree_edge_label(x: TreeLetter, from: Vertex, to: Vertex) -> EdgeLabel {
    match x {
        TreeLetter::A => EdgeLabel::oriented(Label::A, from),
        TreeLetter::AInv => EdgeLabel::oriented(Label::A, to),
        TreeLetter::B => EdgeLabel::unoriented(Label::B),
    }
}

/// Label of the vertical edge between fibers `j` and `j + 1` over `t`:
/// `c` when `|t| + j` is even. Each vertical 4-cycle alternates, and
/// tree-adjacent vertices see the pattern swapped.
pub fn vertical_label(t: &TreeWord, j: usize) -> Label {
    if (t.len() + j).is_multiple_of(2) {
        Label::C
    } else {
        Label::D
    }
}

#[derive(Clone, Debug)]
pub struct TreeBall {
    pub ball: RootedBall,
    /// Word of each local vertex.
    pub words: Vec<TreeWord>,
}

/// Ball of radius `r` in the 3-regular tree around the empty word.
pub fn tree_ball(r: usize, mode: Mode) -> TreeBall {
    let mut words = vec![TreeWord::root()];
    let mut index: HashMap<TreeWord, Vertex> = HashMap::from([(TreeWord::root(), 0)]);
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        if words[i].len() == r {
            continue;
        }
        for x in TreeLetter::ALL {
            let w = words[i].times(x);
            if index.contains_key(&w) {
                continue;
            }
            let j = words.len();
            index.insert(w.clone(), j);
            words.push(w);
            edges.push((i, j));
            labels.push(tree_edge_label(x, i, j));
            queue.push_back(j);
        }
    }
    let source = labelled_source(words.len(), edges, labels);
    let ball = match mode {
        Mode::Graph => extract_ball(source.graph(), 0, r),
        Mode::Diagram => extract_ball(&source, 0, r),
    }
    .expect("root in range");
    let words = ball.origin().iter().map(|&v| words[v].clone()).collect();
    TreeBall { ball, words }
}

fn labelled_source(n: usize, edges: Vec<(Vertex, Vertex)>, labels: Vec<EdgeLabel>) -> Diagram {
    let mut pairs: Vec<((Vertex, Vertex), EdgeLabel)> = edges
        .into_iter()
        .zip(labels)
        .map(|((u, v), l)| ((u.min(v), u.max(v)), l))
        .collect();
    pairs.sort_by_key(|p| p.0);
    let graph = Graph::new(n, pairs.iter().map(|p| p.0)).expect("generated edges are simple");
    Diagram::new(graph, pairs.into_iter().map(|p| p.1).collect()).expect("generated labels are valid")
}

/// Vertex `(t, i)` of `T x C4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LimitVertex {
    pub word: TreeWord,
    pub fiber: u8,
}

#[derive(Clone, Debug)]
pub struct LimitBall {
    pub ball: RootedBall,
    pub coords: Vec<LimitVertex>,
}

fn c4_step(i: u8, up: bool) -> u8 {
    if up {
        (i + 1) % 4
    } else {
        (i + 3) % 4
    }
}

/// Ball of radius `r` in `T x C4` around `(e, 0)`, grown breadth-first from
/// the product adjacency rule.
pub fn limit_ball(r: usize, mode: Mode) -> LimitBall {
    let root = LimitVertex { word: TreeWord::root(), fiber: 0 };
    let mut coords = vec![root.clone()];
    let mut dist = vec![0usize];
    let mut index: HashMap<LimitVertex, Vertex> = HashMap::from([(root, 0)]);
    let mut edges: BTreeMap<(Vertex, Vertex), EdgeLabel> = BTreeMap::new();
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let here = coords[i].clone();
        let mut nbrs: Vec<(LimitVertex, Box<dyn Fn(Vertex, Vertex) -> EdgeLabel>)> = Vec::new();
        for x in TreeLetter::ALL {
            let there = LimitVertex { word: here.word.times(x), fiber: here.fiber };
            nbrs.push((there, Box::new(move |a, b| tree_edge_label(x, a, b))));
        }
        for up in [true, false] {
            let there = LimitVertex { word: here.word.clone(), fiber: c4_step(here.fiber, up) };
            let low = if up { here.fiber } else { there.fiber };
            let label = vertical_label(&here.word, low as usize);
            nbrs.push((there, Box::new(move |_, _| EdgeLabel::unoriented(label))));
        }
        for (there, label) in nbrs {
            let j = match index.get(&there) {
                Some(&j) => j,
                None if dist[i] < r => {
                    let j = coords.len();
                    index.insert(there.clone(), j);
                    coords.push(there);
                    dist.push(dist[i] + 1);
                    queue.push_back(j);
                    j
                }
                None => continue,
            };
            edges.entry((i.min(j), i.max(j))).or_insert_with(|| label(i, j));
        }
    }
    let (pairs, labels): (Vec<_>, Vec<_>) = edges.into_iter().unzip();
    let source = labelled_source(coords.len(), pairs, labels);
    let ball = match mode {
        Mode::Graph => extract_ball(source.graph(), 0, r),
        Mode::Diagram => extract_ball(&source, 0, r),
    }
    .expect("root in range");
    let coords = ball.origin().iter().map(|&v| coords[v].clone()).collect();
    LimitBall { ball, coords }
}

/// One letter of a relator word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub label: Label,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: Label,
    pub involutive: bool,
}

/// Generators with involution flags and relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Vec<Letter>>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorJson {
    sym: String,
    involutive: bool,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<GeneratorJson>,
    relators: Vec<String>,
}

impl Presentation {
    /// `<a, b, c, d | b^2, c^2, d^2, cdcd, a d a^-1 c, a c a^-1 d, b c b d>`.
    pub fn limit_diagram() -> Presentation {
        let generators = vec![
            Generator { label: Label::A, involutive: false },
            Generator { label: Label::B, involutive: true },
            Generator { label: Label::C, involutive: true },
            Generator { label: Label::D, involutive: true },
        ];
        Presentation::new(generators, &["bb", "cc", "dd", "cdcd", "adAc", "acAd", "bcbd"])
            .expect("built-in presentation is valid")
    }

    /// Relators are spelled with one character per letter, upper case for
    /// inverses (`A` = `a^-1`). Inverses of involutive generators are
    /// normalised to the generator itself.
    pub fn new(generators: Vec<Generator>, relators: &[&str]) -> Result<Presentation> {
        let mut words = Vec::new();
        for r in relators {
            if r.is_empty() {
                return Err(GlimError::InvalidParameter("empty relator".into()));
            }
            let mut word = Vec::new();
            for ch in r.chars() {
                let lower = ch.to_ascii_lowercase().to_string();
                let gen = generators
                    .iter()
                    .find(|g| g.label.symbol() == lower)
                    .ok_or_else(|| GlimError::InvalidLabel(format!("{ch} in relator {r}")))?;
                let inverse = ch.is_ascii_uppercase() && !gen.involutive;
                word.push(Letter { label: gen.label, inverse });
            }
            words.push(word);
        }
        Ok(Presentation { generators, relators: words })
    }

    pub fn relator_text(word: &[Letter]) -> String {
        word.iter()
            .map(|l| {
                let s = l.label.symbol();
                if l.inverse {
                    s.to_ascii_uppercase()
                } else {
                    s.to_string()
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = PresentationJson {
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorJson { sym: g.label.symbol().to_string(), involutive: g.involutive })
                .collect(),
            relators: self.relators.iter().map(|w| Presentation::relator_text(w)).collect(),
        };
        Ok(serde_json::to_string(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Presentation> {
        let doc: PresentationJson = serde_json::from_str(text)?;
        let generators = doc
            .generators
            .into_iter()
            .map(|g| {
                let label: Label = g.sym.parse()?;
                if label.is_involutive() != g.involutive {
                    return Err(GlimError::InvalidLabel(format!(
                        "generator {} must {}be involutive",
                        g.sym,
                        if label.is_involutive() { "" } else { "not " }
                    )));
                }
                Ok(Generator { label, involutive: g.involutive })
            })
            .collect::<Result<Vec<_>>>()?;
        let rel: Vec<&str> = doc.relators.iter().map(String::as_str).collect();
        Presentation::new(generators, &rel)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelatorViolation {
    pub vertex: Vertex,
    pub relator: String,
    pub end: Vertex,
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityViolation {
    pub vertex: Vertex,
    pub label: Label,
    /// "out", "in" or "both"
    pub side: &'static str,
    pub count: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelatorCount {
    pub relator: String,
    pub checked: usize,
    pub truncated: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelatorReport {
    /// (vertex, relator) traces that stayed inside the diagram
    pub checked: usize,
    /// traces that hit the boundary before closing
    pub truncated: usize,
    pub per_relator: Vec<RelatorCount>,
    pub violations: Vec<RelatorViolation>,
    pub injectivity: Vec<InjectivityViolation>,
}

impl RelatorReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.injectivity.is_empty()
    }
}

fn step(d: &Diagram, v: Vertex, letter: Letter) -> Option<Vertex> {
    d.graph().incident(v).iter().find_map(|&(w, e)| {
        let l = d.label(e);
        if l.label != letter.label {
            return None;
        }
        match l.tail {
            None => Some(w),
            Some(t) if (t == v) != letter.inverse => Some(w),
            Some(_) => None,
        }
    })
}

/// Trace every relator from every vertex of a (partial) diagram.
///
/// A trace that needs an edge missing from the diagram is counted as
/// truncated, not as a violation. Also reports vertices with more than one
/// outgoing or incoming edge of the same label.
pub fn check_relators(d: &Diagram, p: &Presentation) -> Result<RelatorReport> {
    for l in d.labels() {
        if !p.generators.iter().any(|g| g.label == l.label) {
            return Err(GlimError::InvalidLabel(format!("label {} is not a generator", l.label)));
        }
    }
    let g = d.graph();
    let mut injectivity = Vec::new();
    for v in 0..g.n() {
        let mut counts: BTreeMap<(Label, &'static str), usize> = BTreeMap::new();
        for &(_, e) in g.incident(v) {
            let l = d.label(e);
            let side = match l.tail {
                None => "both",
                Some(t) if t == v => "out",
                Some(_) => "in",
            };
            *counts.entry((l.label, side)).or_default() += 1;
        }
        for ((label, side), count) in counts {
            if count > 1 {
                injectivity.push(InjectivityViolation { vertex: v, label, side, count });
            }
        }
    }

    let mut per_relator: Vec<RelatorCount> = p
        .relators
        .iter()
        .map(|w| RelatorCount { relator: Presentation::relator_text(w), ..Default::default() })
        .collect();
    let mut violations = Vec::new();
    for v in 0..g.n() {
        for (k, word) in p.relators.iter().enumerate() {
            let mut at = Some(v);
            for &letter in word {
                at = at.and_then(|x| step(d, x, letter));
            }
            let count = &mut per_relator[k];
            match at {
                None => count.truncated += 1,
                Some(end) => {
                    count.checked += 1;
                    if end != v {
                        count.violations += 1;
                        violations.push(RelatorViolation { vertex: v, relator: count.relator.clone(), end });
                    }
                }
            }
        }
    }
    Ok(RelatorReport {
        checked: per_relator.iter().map(|c| c.checked).sum(),
        truncated: per_relator.iter().map(|c| c.truncated).sum(),
        per_relator,
        violations,
        injectivity,
    })
}
