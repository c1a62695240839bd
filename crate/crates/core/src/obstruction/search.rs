//! Heuristic search for labellings of a fibered host with many R-good vertices.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{LimitPattern, Labelling, Scratch};
use crate::constructions::FiberedGraph;
use crate::error::{GlimError, Result};
use crate::graph::{EdgeId, EdgeLabel, Label, Vertex};
use crate::rng::{stream, StreamRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Independent uniform labellings.
    Random,
    /// Grow the limit pattern breadth-first from a random base vertex.
    Propagate,
    /// Local search on single-edge relabellings, started from a propagated labelling.
    Anneal,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Random, Strategy::Propagate, Strategy::Anneal];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Random => "random",
            Strategy::Propagate => "propagate",
            Strategy::Anneal => "anneal",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = GlimError;

    fn from_str(s: &str) -> Result<Strategy> {
        Strategy::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| GlimError::UnknownStrategy(s.to_string()))
    }
}

pub struct SearchResult<'h> {
    pub labelling: Labelling<'h>,
    pub good: usize,
    pub fraction: f64,
}

struct Scorer<'p> {
    pattern: &'p LimitPattern,
    scratch: Scratch,
}

impl Scorer<'_> {
    fn is_good(&mut self, lab: &Labelling, v: Vertex) -> bool {
        self.pattern.root_matches(lab, v) && self.pattern.walk(lab, v, &mut self.scratch)
    }

    fn count(&mut self, lab: &Labelling) -> usize {
        (0..lab.host().graph.n()).filter(|&v| self.is_good(lab, v)).count()
    }
}

fn random_label(rng: &mut StreamRng, (u, v): (Vertex, Vertex)) -> EdgeLabel {
    match rng.gen_range(0..5) {
        0 => EdgeLabel::oriented(Label::A, u),
        1 => EdgeLabel::oriented(Label::A, v),
        2 => EdgeLabel::unoriented(Label::B),
        3 => EdgeLabel::unoriented(Label::C),
        _ => EdgeLabel::unoriented(Label::D),
    }
}

fn random_labelling<'h>(host: &'h FiberedGraph, rng: &mut StreamRng) -> Labelling<'h> {
    let labels = host.graph.edges().iter().map(|&e| random_label(rng, e)).collect();
    Labelling::complete(host, labels).expect("random labels are well formed")
}

/// Tree-edge kind seen from one endpoint.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    AOut,
    AIn,
    B,
}

impl Kind {
    const ALL: [Kind; 3] = [Kind::AOut, Kind::AIn, Kind::B];

    fn slot(self) -> usize {
        self as usize
    }

    fn opposite(self) -> Kind {
        match self {
            Kind::AOut => Kind::AIn,
            Kind::AIn => Kind::AOut,
            Kind::B => Kind::B,
        }
    }
}

/// Breadth-first over the base from a random vertex: every base vertex takes
/// one `a`-out, one `a`-in and one `b` edge where the already-labelled edges
/// allow it (random choice otherwise); vertical edges alternate `c`/`d` by
/// the breadth-first depth parity. Fiber copies share the base labelling.
fn propagate<'h>(host: &'h FiberedGraph, rng: &mut StreamRng) -> Labelling<'h> {
    let base = &host.base;
    let nb = base.n();
    let mut used = vec![[false; 3]; nb];
    // base edge -> (kind seen from the lower endpoint)
    let mut kind: Vec<Option<Kind>> = vec![None; base.edge_count()];
    let mut depth = vec![usize::MAX; nb];
    let start = rng.gen_range(0..nb);
    let roots = std::iter::once(start).chain(0..nb);
    for root in roots {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(y) = queue.pop_front() {
            for &(z, e) in base.incident(y) {
                if depth[z] == usize::MAX {
                    depth[z] = depth[y] + 1;
                    queue.push_back(z);
                }
                if kind[e].is_some() {
                    continue;
                }
                let fits: Vec<Kind> = Kind::ALL
                    .into_iter()
                    .filter(|k| !used[y][k.slot()] && !used[z][k.opposite().slot()])
                    .collect();
                let k = match fits.choose(rng) {
                    Some(&k) => k,
                    None => Kind::ALL[rng.gen_range(0..3)],
                };
                used[y][k.slot()] = true;
                used[z][k.opposite().slot()] = true;
                kind[e] = Some(if y < z { k } else { k.opposite() });
            }
        }
    }
    let labels = host
        .graph
        .edges()
        .iter()
        .map(|&(x, w)| {
            let (u, v) = (host.base_of[x], host.base_of[w]);
            let (fx, fw) = (host.fiber[x] as usize, host.fiber[w] as usize);
            if u == v {
                let low = if (fx + 1) % 4 == fw { fx } else { fw };
                let label = if (depth[u] + low) % 2 == 0 { Label::C } else { Label::D };
                EdgeLabel::unoriented(label)
            } else {
                let e = base.edge_id(u, v).expect("fiber edge lies over a base edge");
                let k = kind[e].expect("every base edge is labelled");
                // `k` is seen from the lower base endpoint
                let (lo, hi) = if host.base_of[x] < host.base_of[w] { (x, w) } else { (w, x) };
                match k {
                    Kind::AOut => EdgeLabel::oriented(Label::A, lo),
                    Kind::AIn => EdgeLabel::oriented(Label::A, hi),
                    Kind::B => EdgeLabel::unoriented(Label::B),
                }
            }
        })
        .collect();
    Labelling::complete(host, labels).expect("propagated labels are well formed")
}

/// Host vertices within distance `r` of `u` or `v`.
fn around(host: &FiberedGraph, (u, v): (Vertex, Vertex), r: usize, mark: &mut [u32], epoch: u32) -> Vec<Vertex> {
    let mut out = vec![u, v];
    let mut depth = vec![0usize, 0];
    mark[u] = epoch;
    mark[v] = epoch;
    let mut i = 0;
    while i < out.len() {
        let (x, d) = (out[i], depth[i]);
        i += 1;
        if d == r {
            continue;
        }
        for y in host.graph.neighbors(x) {
            if mark[y] != epoch {
                mark[y] = epoch;
                out.push(y);
                depth.push(d + 1);
            }
        }
    }
    out
}

/// Relabelling that keeps vertical edges vertical-looking most of the time.
fn move_label(host: &FiberedGraph, e: EdgeId, rng: &mut StreamRng) -> EdgeLabel {
    let ends = host.graph.edge(e);
    if rng.gen_bool(0.1) {
        return random_label(rng, ends);
    }
    if host.is_vertical(e) {
        EdgeLabel::unoriented(if rng.gen_bool(0.5) { Label::C } else { Label::D })
    } else {
        match rng.gen_range(0..3) {
            0 => EdgeLabel::oriented(Label::A, ends.0),
            1 => EdgeLabel::oriented(Label::A, ends.1),
            _ => EdgeLabel::unoriented(Label::B),
        }
    }
}

fn anneal<'h>(host: &'h FiberedGraph, scorer: &mut Scorer, budget: usize, rng: &mut StreamRng) -> (Labelling<'h>, usize) {
    let n = host.graph.n();
    let r = scorer.pattern.radius;
    let mut lab = propagate(host, rng);
    let mut good: Vec<bool> = (0..n).map(|v| scorer.is_good(&lab, v)).collect();
    let mut score = good.iter().filter(|&&g| g).count();
    let (mut best, mut best_score) = (lab.clone(), score);
    let mut mark = vec![0u32; n];
    let m = host.graph.edge_count();
    for step in 0..budget {
        let e = rng.gen_range(0..m);
        let old = lab.get(e).expect("complete");
        let new = move_label(host, e, rng);
        if new == old {
            continue;
        }
        lab.set(e, new).expect("move labels are well formed");
        let touched = around(host, host.graph.edge(e), r, &mut mark, step as u32 + 1);
        let fresh: Vec<bool> = touched.iter().map(|&v| scorer.is_good(&lab, v)).collect();
        let before = touched.iter().filter(|&&v| good[v]).count() as f64;
        let after = fresh.iter().filter(|&&g| g).count() as f64;
        let temperature = 2.0 * (1.0 - step as f64 / budget as f64) + 0.05;
        if after >= before || rng.gen_bool(((after - before) / temperature).exp()) {
            for (&v, &g) in touched.iter().zip(&fresh) {
                good[v] = g;
            }
            score = score + after as usize - before as usize;
            if score > best_score {
                best = lab.clone();
                best_score = score;
            }
        } else {
            lab.set(e, old).expect("restoring a previous label");
        }
    }
    (best, best_score)
}

/// Best labelling found by `strategy` within `budget` (labellings sampled,
/// restarts, or local moves), with its exact good fraction at radius `r`.
pub fn labelling_search(host: &FiberedGraph, r: usize, strategy: Strategy, budget: usize, seed: u64) -> Result<SearchResult<'_>> {
    labelling_search_with(&LimitPattern::new(r), host, strategy, budget, seed)
}

pub fn labelling_search_with<'h>(
    pattern: &LimitPattern,
    host: &'h FiberedGraph,
    strategy: Strategy,
    budget: usize,
    seed: u64,
) -> Result<SearchResult<'h>> {
    if budget == 0 {
        return Err(GlimError::InvalidParameter("budget must be at least 1".into()));
    }
    if pattern.radius < 1 {
        return Err(GlimError::InvalidParameter("search radius must be at least 1".into()));
    }
    let n = host.graph.n();
    let mut scorer = Scorer { pattern, scratch: pattern.scratch(n) };
    let mut rng = stream(seed, &format!("search/{strategy}"));
    let (labelling, good) = match strategy {
        Strategy::Random | Strategy::Propagate => {
            let mut best: Option<(Labelling, usize)> = None;
            for _ in 0..budget {
                let lab = if strategy == Strategy::Random { random_labelling(host, &mut rng) } else { propagate(host, &mut rng) };
                let score = scorer.count(&lab);
                if best.as_ref().is_none_or(|(_, s)| score > *s) {
                    best = Some((lab, score));
                }
            }
            best.expect("budget >= 1")
        }
        Strategy::Anneal => anneal(host, &mut scorer, budget, &mut rng),
    };
    debug_assert_eq!(scorer.count(&labelling), good);
    Ok(SearchResult { fraction: good as f64 / n.max(1) as f64, labelling, good })
}
