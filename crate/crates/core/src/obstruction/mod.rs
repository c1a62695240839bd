//! R-good vertices of labelled products, their orientation classes, and the
//! independence argument built on them.

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{limit_ball, tree_ball, vertical_label, LimitBall, Mode, TreeWord};
use crate::constructions::{product_c4, FiberedGraph};
use crate::error::{GlimError, Result};
use crate::graph::{
    canonical_code, extract_ball, find_isomorphisms, Code, Diagram, EdgeId, EdgeLabel, Graph, Label, LocalView,
    RootedBall, Vertex,
};

pub mod mis;
pub mod report;
pub mod search;

pub use mis::{max_independent_set, MisResult, DEFAULT_EXACT_CAP};
pub use report::{theorem1_report, theorem2_report, Theorem1Report, Theorem2Report};
pub use search::{labelling_search, SearchResult, Strategy};

/// Radius from which good vertices have a unique isomorphism onto the limit ball.
pub const RIGID_RADIUS: usize = 4;

/// A (possibly partial) edge labelling of a fibered host.
#[derive(Clone, Debug)]
pub struct Labelling<'h> {
    host: &'h FiberedGraph,
    labels: Vec<Option<EdgeLabel>>,
}

impl<'h> Labelling<'h> {
    pub fn empty(host: &'h FiberedGraph) -> Labelling<'h> {
        Labelling { host, labels: vec![None; host.graph.edge_count()] }
    }

    pub fn complete(host: &'h FiberedGraph, labels: Vec<EdgeLabel>) -> Result<Labelling<'h>> {
        if labels.len() != host.graph.edge_count() {
            return Err(GlimError::InvalidParameter("one label per host edge is required".into()));
        }
        let mut lab = Labelling::empty(host);
        for (e, l) in labels.into_iter().enumerate() {
            lab.set(e, l)?;
        }
        Ok(lab)
    }

    pub fn host(&self) -> &'h FiberedGraph {
        self.host
    }

    pub fn get(&self, e: EdgeId) -> Option<EdgeLabel> {
        self.labels[e]
    }

    pub fn set(&mut self, e: EdgeId, l: EdgeLabel) -> Result<()> {
        let (u, v) = self.host.graph.edge(e);
        let ok = match l.tail {
            None => l.label.is_involutive(),
            Some(t) => !l.label.is_involutive() && (t == u || t == v),
        };
        if !ok {
            return Err(GlimError::InvalidLabel(format!("{:?} on edge {{{u}, {v}}}", l)));
        }
        self.labels[e] = Some(l);
        Ok(())
    }

    pub fn first_missing(&self) -> Option<EdgeId> {
        self.labels.iter().position(Option::is_none)
    }

    pub fn to_diagram(&self) -> Result<Diagram> {
        if let Some(e) = self.first_missing() {
            return Err(GlimError::IncompleteLabelling(e));
        }
        Diagram::new(self.host.graph.clone(), self.labels.iter().map(|l| l.expect("complete")).collect())
    }
}

impl LocalView for Labelling<'_> {
    fn graph(&self) -> &Graph {
        &self.host.graph
    }
    fn edge_label(&self, e: EdgeId) -> Option<EdgeLabel> {
        self.labels[e]
    }
    fn is_labelled(&self) -> bool {
        true
    }
}

/// Slot of a labelled half-edge seen from `at`: a-out, a-in, b, c, d.
pub(crate) fn half_edge(l: EdgeLabel, at: Vertex) -> Option<usize> {
    match (l.label, l.tail) {
        (Label::A, Some(t)) => Some(if t == at { 0 } else { 1 }),
        (Label::B, None) => Some(2),
        (Label::C, None) => Some(3),
        (Label::D, None) => Some(4),
        _ => None,
    }
}

const NONE: u32 = u32::MAX;

/// The limit ball with a transition table along labelled half-edges.
pub struct LimitPattern {
    pub radius: usize,
    pub limit: LimitBall,
    pub code: Code,
    step: Vec<[u32; 5]>,
}

/// Reusable buffers for [`LimitPattern::walk`].
pub struct Scratch {
    epoch: u32,
    seen: Vec<u32>,
    image: Vec<u32>,
    depth: Vec<u32>,
    order: Vec<Vertex>,
    used: Vec<u32>,
}

impl Scratch {
    pub fn new(host_n: usize, limit_n: usize) -> Scratch {
        Scratch {
            epoch: 0,
            seen: vec![0; host_n],
            image: vec![NONE; host_n],
            depth: vec![0; host_n],
            order: Vec::new(),
            used: vec![0; limit_n],
        }
    }
}

impl LimitPattern {
    pub fn new(radius: usize) -> LimitPattern {
        let limit = limit_ball(radius, Mode::Diagram);
        let code = canonical_code(&limit.ball);
        let labels = limit.ball.labels().expect("diagram mode");
        let g = limit.ball.graph();
        let mut step = vec![[NONE; 5]; g.n()];
        for v in 0..g.n() {
            for &(w, e) in g.incident(v) {
                let slot = half_edge(labels[e], v).expect("limit labels are in the alphabet");
                debug_assert_eq!(step[v][slot], NONE, "limit diagram is locally injective");
                step[v][slot] = w as u32;
            }
        }
        LimitPattern { radius, limit, code, step }
    }

    pub fn scratch(&self, host_n: usize) -> Scratch {
        Scratch::new(host_n, self.limit.ball.len())
    }

    /// Whether the root sees exactly one half-edge of each kind.
    pub fn root_matches<S: LocalView + ?Sized>(&self, src: &S, x: Vertex) -> bool {
        let mut seen = [false; 5];
        let inc = src.graph().incident(x);
        inc.len() == 5
            && inc.iter().all(|&(_, e)| match src.edge_label(e).and_then(|l| half_edge(l, x)) {
                Some(s) if !seen[s] => {
                    seen[s] = true;
                    true
                }
                _ => false,
            })
    }

    /// Follows labels outward from `x` and checks that they induce a
    /// label-preserving bijection from the radius-`R` ball onto the limit
    /// ball. Because the limit diagram is locally injective, such a map is
    /// forced by the labels, so this decides R-goodness without search.
    pub fn walk<S: LocalView + ?Sized>(&self, src: &S, x: Vertex, s: &mut Scratch) -> bool {
        let g = src.graph();
        s.epoch = s.epoch.wrapping_add(1);
        if s.epoch == 0 {
            s.seen.iter_mut().for_each(|v| *v = 0);
            s.used.iter_mut().for_each(|v| *v = 0);
            s.epoch = 1;
        }
        let ep = s.epoch;
        s.order.clear();
        s.order.push(x);
        s.seen[x] = ep;
        s.depth[x] = 0;
        let mut i = 0;
        while i < s.order.len() {
            let y = s.order[i];
            i += 1;
            if s.depth[y] as usize == self.radius {
                continue;
            }
            for w in g.neighbors(y) {
                if s.seen[w] != ep {
                    s.seen[w] = ep;
                    s.depth[w] = s.depth[y] + 1;
                    s.order.push(w);
                }
            }
        }
        if s.order.len() != self.limit.ball.len() {
            return false;
        }
        for &y in &s.order {
            s.image[y] = NONE;
        }
        s.image[x] = 0;
        s.used[0] = ep;
        let mut half_edges = 0;
        for k in 0..s.order.len() {
            let y = s.order[k];
            let from = s.image[y] as usize;
            for &(z, e) in g.incident(y) {
                if s.seen[z] != ep {
                    continue;
                }
                half_edges += 1;
                let Some(slot) = src.edge_label(e).and_then(|l| half_edge(l, y)) else {
                    return false;
                };
                let to = self.step[from][slot];
                if to == NONE {
                    return false;
                }
                if s.image[z] == NONE {
                    if s.used[to as usize] == ep {
                        return false;
                    }
                    s.used[to as usize] = ep;
                    s.image[z] = to;
                } else if s.image[z] != to {
                    return false;
                }
            }
        }
        half_edges == 2 * self.limit.ball.graph().edge_count()
    }
}

/// A rooted labelled isomorphism from the ball of `vertex` onto the limit ball.
#[derive(Clone, Debug)]
pub struct Iota {
    pub vertex: Vertex,
    pub ball: RootedBall,
    /// Local ball vertex to local limit-ball vertex.
    pub map: Vec<Vertex>,
    /// `false` when more than one isomorphism exists (possible only below the rigid radius).
    pub unique: bool,
}

pub struct GoodSet {
    pub radius: usize,
    pub good: Vec<Vertex>,
    pub iotas: Vec<Iota>,
    pub limit: LimitBall,
}

impl GoodSet {
    pub fn fraction(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.good.len() as f64 / n as f64
        }
    }
}

/// Vertices whose labelled radius-`r` ball is rooted labelled-isomorphic to
/// the limit ball, each with its isomorphism. Candidates are screened by
/// root labels and canonical code; the isomorphism itself comes from an
/// independent search, which must agree.
pub fn find_r_good(host: &FiberedGraph, lab: &Labelling, r: usize) -> Result<GoodSet> {
    find_r_good_with(&LimitPattern::new(r), host, lab)
}

pub fn find_r_good_with(pattern: &LimitPattern, host: &FiberedGraph, lab: &Labelling) -> Result<GoodSet> {
    let r = pattern.radius;
    if r < 1 {
        return Err(GlimError::InvalidParameter("R-goodness needs R >= 1".into()));
    }
    if !std::ptr::eq(host, lab.host) && host.graph != lab.host.graph {
        return Err(GlimError::Precondition("labelling belongs to a different host".into()));
    }
    if let Some(e) = lab.first_missing() {
        return Err(GlimError::IncompleteLabelling(e));
    }
    let limit = &pattern.limit.ball;
    let found: Vec<Option<Iota>> = (0..host.graph.n())
        .into_par_iter()
        .filter(|&v| pattern.root_matches(lab, v))
        .map(|v| {
            let ball = extract_ball(lab, v, r)?;
            if ball.len() != limit.len() || canonical_code(&ball) != pattern.code {
                return Ok(None);
            }
            let isos = find_isomorphisms(&ball, limit, 2)?;
            let Some(map) = isos.first().cloned() else {
                return Err(GlimError::Invariant(format!("vertex {v}: codes agree but no isomorphism was found")));
            };
            if isos.len() > 1 && r >= RIGID_RADIUS {
                return Err(GlimError::Invariant(format!(
                    "vertex {v}: several labelled isomorphisms at radius {r}"
                )));
            }
            Ok(Some(Iota { vertex: v, ball, map, unique: isos.len() == 1 }))
        })
        .collect::<Result<_>>()?;
    let iotas: Vec<Iota> = found.into_iter().flatten().collect();
    Ok(GoodSet {
        radius: r,
        good: iotas.iter().map(|i| i.vertex).collect(),
        iotas,
        limit: pattern.limit.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Preserving,
    Reversing,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrientationClass {
    pub preserving: Vec<Vertex>,
    pub reversing: Vec<Vertex>,
}

impl OrientationClass {
    /// Adjacent vertices that landed in the same class.
    pub fn same_class_edges(&self, g: &Graph) -> Vec<(Vertex, Vertex)> {
        let mut class = vec![None; g.n()];
        for &v in &self.preserving {
            class[v] = Some(Orientation::Preserving);
        }
        for &v in &self.reversing {
            class[v] = Some(Orientation::Reversing);
        }
        g.edges()
            .iter()
            .copied()
            .filter(|&(u, v)| class[u].is_some() && class[u] == class[v])
            .collect()
    }
}

/// Orientation of one isomorphism: compares fiber differences in the host
/// with those of the images in the limit.
pub fn iota_orientation(iota: &Iota, host: &FiberedGraph, limit: &LimitBall) -> Result<Orientation> {
    let origin = iota.ball.origin();
    let f0 = host.fiber[origin[0]] as i32;
    let g0 = limit.coords[iota.map[0]].fiber as i32;
    let (mut fwd, mut rev) = (true, true);
    for y in 0..iota.ball.len() {
        let df = (host.fiber[origin[y]] as i32 - f0).rem_euclid(4);
        let dg = (limit.coords[iota.map[y]].fiber as i32 - g0).rem_euclid(4);
        fwd &= dg == df;
        rev &= dg == (-df).rem_euclid(4);
    }
    match (fwd, rev) {
        (true, false) => Ok(Orientation::Preserving),
        (false, true) => Ok(Orientation::Reversing),
        _ => Err(GlimError::Invariant(format!(
            "isomorphism at vertex {} does not map fibers bijectively onto fibers",
            iota.vertex
        ))),
    }
}

/// Split the good set by whether each isomorphism preserves or reverses the
/// cyclic order of the fibers.
pub fn classify_orientations(good: &GoodSet, host: &FiberedGraph) -> Result<OrientationClass> {
    if good.radius < RIGID_RADIUS {
        return Err(GlimError::Precondition(format!(
            "orientation classes need unique isomorphisms, i.e. radius >= {RIGID_RADIUS}"
        )));
    }
    let mut out = OrientationClass::default();
    for iota in &good.iotas {
        match iota_orientation(iota, host, &good.limit)? {
            Orientation::Preserving => out.preserving.push(iota.vertex),
            Orientation::Reversing => out.reversing.push(iota.vertex),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceCheck {
    pub independent: bool,
    pub witness: Option<(Vertex, Vertex)>,
}

pub fn is_independent(g: &Graph, s: &[Vertex]) -> IndependenceCheck {
    let witness = g.is_independent(s);
    IndependenceCheck { independent: witness.is_none(), witness }
}

/// `tree_ball(radius) x C4`, labelled exactly as the limit diagram.
pub struct LimitRegion {
    pub host: FiberedGraph,
    /// Tree word of each base vertex.
    pub words: Vec<TreeWord>,
    pub labels: Vec<EdgeLabel>,
}

impl LimitRegion {
    pub fn labelling(&self) -> Labelling<'_> {
        Labelling::complete(&self.host, self.labels.clone()).expect("limit labels are valid")
    }

    /// Host vertices whose tree coordinate has length at most `k`.
    pub fn interior(&self, k: usize) -> Vec<Vertex> {
        (0..self.host.graph.n()).filter(|&v| self.words[self.host.base_of[v]].len() <= k).collect()
    }
}

pub fn limit_region(radius: usize) -> LimitRegion {
    let tb = tree_ball(radius, Mode::Diagram);
    let base_labels = tb.ball.labels().expect("diagram mode").to_vec();
    let host = product_c4(tb.ball.graph()).expect("tree ball is nonempty");
    let labels = host
        .graph
        .edges()
        .iter()
        .map(|&(x, y)| {
            let (u, v) = (host.base_of[x], host.base_of[y]);
            let (fx, fy) = (host.fiber[x] as usize, host.fiber[y] as usize);
            if u == v {
                let low = if (fx + 1) % 4 == fy { fx } else { fy };
                EdgeLabel::unoriented(vertical_label(&tb.words[u], low))
            } else {
                let e = host.base.edge_id(u, v).expect("fiber edge lies over a base edge");
                let l = base_labels[e];
                EdgeLabel { label: l.label, tail: l.tail.map(|t| host.vertex(t, fx)) }
            }
        })
        .collect();
    LimitRegion { words: tb.words, host, labels }
}
