//! Finite graph families: random regular graphs, products with `C4`, the
//! bipartite Hamiltonian cubic base `B_n`, the directed `K_n'`, the doubled
//! `K_n` with blue/yellow edges, and the Hamiltonian cycle `C_n` of `K_n`.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{GlimError, Result};
use crate::graph::{girth, EdgeId, Girth, Graph, Label, Vertex};
use crate::rng::stream;

pub const DEFAULT_BUDGET: usize = 10_000;
pub const DEFAULT_SAMPLES: usize = 32;

/// Configuration-model `d`-regular graph, rejecting loops and multi-edges.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    random_regular_with_budget(n, d, seed, DEFAULT_BUDGET)
}

pub fn random_regular_with_budget(n: usize, d: usize, seed: u64, budget: usize) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(GlimError::Parity { n, d });
    }
    if d >= n {
        return Err(GlimError::InvalidParameter(format!("degree {d} must be below vertex count {n}")));
    }
    let mut rng = stream(seed, "random_regular");
    let mut points: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..budget {
        points.shuffle(&mut rng);
        let mut edges: Vec<(Vertex, Vertex)> = points
            .chunks_exact(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue 'attempt;
        }
        return Graph::new(n, edges);
    }
    Err(GlimError::BudgetExhausted { what: "simple configuration-model pairing", attempts: budget })
}

/// A graph built as a product with `C4`, with its fiber structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberedGraph {
    pub graph: Graph,
    pub base: Graph,
    /// Fiber index of each vertex, in `0..4`.
    pub fiber: Vec<u8>,
    /// Base vertex of each vertex.
    pub base_of: Vec<Vertex>,
    /// Edges between consecutive fibers over the same base vertex.
    pub vertical: Vec<EdgeId>,
    at: Vec<[Vertex; 4]>,
}

impl FiberedGraph {
    /// Assemble from explicit maps and check the product structure.
    pub fn new(graph: Graph, base: Graph, fiber: Vec<u8>, base_of: Vec<Vertex>) -> Result<FiberedGraph> {
        let nb = base.n();
        if graph.n() != 4 * nb || fiber.len() != graph.n() || base_of.len() != graph.n() {
            return Err(GlimError::InvalidConstruction("fiber maps do not cover 4 copies of the base".into()));
        }
        let mut at = vec![[usize::MAX; 4]; nb];
        for v in 0..graph.n() {
            let (f, u) = (fiber[v] as usize, base_of[v]);
            if f >= 4 || u >= nb || at[u][f] != usize::MAX {
                return Err(GlimError::InvalidConstruction(format!("vertex {v} has a bad or duplicate fiber coordinate")));
            }
            at[u][f] = v;
        }
        let mut vertical = Vec::new();
        for (e, &(x, y)) in graph.edges().iter().enumerate() {
            let (fx, fy) = (fiber[x] as usize, fiber[y] as usize);
            if base_of[x] == base_of[y] {
                if (fx + 1) % 4 != fy && (fy + 1) % 4 != fx {
                    return Err(GlimError::InvalidConstruction(format!("edge {{{x}, {y}}} joins opposite fibers")));
                }
                vertical.push(e);
            } else if fx != fy || !base.has_edge(base_of[x], base_of[y]) {
                return Err(GlimError::InvalidConstruction(format!("edge {{{x}, {y}}} is neither vertical nor a base edge")));
            }
        }
        let fg = FiberedGraph { graph, base, fiber, base_of, vertical, at };
        if fg.graph.edge_count() != 4 * fg.base.edge_count() + 4 * nb {
            return Err(GlimError::InvalidConstruction("edge count differs from the product".into()));
        }
        Ok(fg)
    }

    pub fn base_size(&self) -> usize {
        self.base.n()
    }

    /// Vertex over base vertex `u` in fiber `i`.
    pub fn vertex(&self, u: Vertex, i: usize) -> Vertex {
        self.at[u][i % 4]
    }

    pub fn fiber_vertices(&self, i: usize) -> Vec<Vertex> {
        (0..self.base_size()).map(|u| self.at[u][i]).collect()
    }

    /// Induced graph on fiber `i`, with vertex `u` of the result sitting over base vertex `u`.
    pub fn fiber_graph(&self, i: usize) -> Graph {
        self.graph.induced(&self.fiber_vertices(i))
    }

    /// First fiber whose induced graph differs from the base under `base_of`.
    pub fn fiber_mismatch(&self) -> Option<usize> {
        (0..4).find(|&i| self.fiber_graph(i) != self.base)
    }

    pub fn is_vertical(&self, e: EdgeId) -> bool {
        let (x, y) = self.graph.edge(e);
        self.base_of[x] == self.base_of[y]
    }
}

/// `h x C4`: vertex `(u, i)` is `i * |V(h)| + u`.
pub fn product_c4(h: &Graph) -> Result<FiberedGraph> {
    let nb = h.n();
    if nb == 0 {
        return Err(GlimError::InvalidParameter("base graph must be nonempty".into()));
    }
    let id = |u: Vertex, i: usize| (i % 4) * nb + u;
    let mut edges = Vec::with_capacity(4 * (h.edge_count() + nb));
    for i in 0..4 {
        for &(u, v) in h.edges() {
            edges.push((id(u, i), id(v, i)));
        }
        for u in 0..nb {
            edges.push((id(u, i), id(u, i + 1)));
        }
    }
    let graph = Graph::new(4 * nb, edges)?;
    let fiber = (0..4 * nb).map(|v| (v / nb) as u8).collect();
    let base_of = (0..4 * nb).map(|v| v % nb).collect();
    FiberedGraph::new(graph, h.clone(), fiber, base_of)
}

/// Cubic bipartite base with a Hamiltonian cycle alternating between the sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseBn {
    pub n: usize,
    pub graph: Graph,
    pub upper: Vec<Vertex>,
    pub lower: Vec<Vertex>,
    /// Hamiltonian cycle `u_1, l_1, u_2, l_2, ...`.
    pub ham: Vec<Vertex>,
    pub achieved_girth: Girth,
}

impl BaseBn {
    /// Rebuild from a graph and its Hamiltonian cycle; the cycle must start in the upper side.
    pub fn from_cycle(graph: Graph, ham: Vec<Vertex>) -> Result<BaseBn> {
        let m = graph.n() / 2;
        if !graph.n().is_multiple_of(2) || m.is_multiple_of(2) || ham.len() != graph.n() {
            return Err(GlimError::InvalidConstruction("B_n needs 2(2n+1) vertices and a full cycle".into()));
        }
        let n = (m - 1) / 2;
        let upper = ham.iter().step_by(2).copied().collect();
        let lower = ham.iter().skip(1).step_by(2).copied().collect();
        let achieved_girth = girth(&graph);
        let b = BaseBn { n, graph, upper, lower, ham, achieved_girth };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let m = 2 * self.n + 1;
        let bad = |msg: &str| Err(GlimError::InvalidConstruction(format!("B_{}: {msg}", self.n)));
        if self.upper.len() != m || self.lower.len() != m || self.graph.n() != 2 * m {
            return bad("sides must have 2n+1 vertices each");
        }
        if !self.graph.is_regular(3) {
            return bad("not 3-regular");
        }
        let mut side = vec![None; 2 * m];
        for &u in &self.upper {
            side[u] = Some(false);
        }
        for &l in &self.lower {
            side[l] = Some(true);
        }
        if side.iter().any(Option::is_none) {
            return bad("sides do not partition the vertices");
        }
        if self.graph.edges().iter().any(|&(u, v)| side[u] == side[v]) {
            return bad("edge inside one side");
        }
        validate_cycle(&self.graph, &self.ham).or_else(|e| bad(&e.to_string()))?;
        if self.ham.iter().enumerate().any(|(k, &v)| side[v] != Some(k % 2 == 1)) {
            return bad("Hamiltonian cycle does not alternate starting in the upper side");
        }
        Ok(())
    }
}

/// Checks that `cycle` visits every vertex once with consecutive vertices adjacent.
pub fn validate_cycle(g: &Graph, cycle: &[Vertex]) -> Result<()> {
    if cycle.len() != g.n() || g.n() < 3 {
        return Err(GlimError::InvalidConstruction(format!(
            "cycle has {} vertices, graph has {}",
            cycle.len(),
            g.n()
        )));
    }
    let mut seen = vec![false; g.n()];
    for &v in cycle {
        g.check_vertex(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(GlimError::InvalidConstruction(format!("vertex {v} visited twice")));
        }
    }
    for k in 0..cycle.len() {
        let (u, v) = (cycle[k], cycle[(k + 1) % cycle.len()]);
        if !g.has_edge(u, v) {
            return Err(GlimError::InvalidConstruction(format!("{u} and {v} are consecutive but not adjacent")));
        }
    }
    Ok(())
}

/// Options for [`random_bipartite_hamiltonian_with`].
#[derive(Clone, Copy, Debug)]
pub struct BaseOptions {
    /// Simple instances drawn; the one with the largest girth is kept.
    pub samples: usize,
    /// Rejection budget per instance.
    pub budget: usize,
}

impl Default for BaseOptions {
    fn default() -> Self {
        BaseOptions { samples: DEFAULT_SAMPLES, budget: DEFAULT_BUDGET }
    }
}

pub fn random_bipartite_hamiltonian(n: usize, seed: u64) -> Result<BaseBn> {
    random_bipartite_hamiltonian_with(n, seed, BaseOptions::default())
}

/// Cycle `u_0 l_0 u_1 l_1 ... u_2n l_2n` plus a uniform perfect matching
/// between the sides, rejected until the union is simple.
pub fn random_bipartite_hamiltonian_with(n: usize, seed: u64, opts: BaseOptions) -> Result<BaseBn> {
    if n < 1 {
        return Err(GlimError::InvalidParameter("n must be at least 1".into()));
    }
    if opts.samples == 0 {
        return Err(GlimError::InvalidParameter("at least one sample is needed".into()));
    }
    let m = 2 * n + 1;
    let mut rng = stream(seed, "bipartite_hamiltonian");
    let ham: Vec<Vertex> = (0..m).flat_map(|i| [i, m + i]).collect();
    let mut best: Option<BaseBn> = None;
    for _ in 0..opts.samples {
        let mut sigma: Vec<usize> = (0..m).collect();
        let mut found = false;
        for _ in 0..opts.budget {
            sigma.shuffle(&mut rng);
            // u_i is already adjacent to l_i and l_{i-1}
            if (0..m).all(|i| sigma[i] != i && sigma[i] != (i + m - 1) % m) {
                found = true;
                break;
            }
        }
        if !found {
            return Err(GlimError::BudgetExhausted { what: "simple Hamiltonian-plus-matching instance", attempts: opts.budget });
        }
        let mut edges = Vec::with_capacity(3 * m);
        for k in 0..2 * m {
            edges.push((ham[k], ham[(k + 1) % (2 * m)]));
        }
        for i in 0..m {
            edges.push((i, m + sigma[i]));
        }
        let graph = Graph::new(2 * m, edges)?;
        let b = BaseBn {
            n,
            achieved_girth: girth(&graph),
            graph,
            upper: (0..m).collect(),
            lower: (m..2 * m).collect(),
            ham: ham.clone(),
        };
        let better = match &best {
            None => true,
            Some(cur) => b.achieved_girth > cur.achieved_girth,
        };
        if better {
            best = Some(b);
        }
    }
    let best = best.expect("samples >= 1");
    best.validate()?;
    Ok(best)
}

/// The directed graph `K_n'` on `V_1 .. V_4` (stored as classes `0..4`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnPrime {
    pub n: usize,
    pub arcs: Vec<(Vertex, Vertex)>,
}

impl KnPrime {
    pub fn out_degree(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, _) in &self.arcs {
            d[u] += 1;
        }
        d
    }

    pub fn in_degree(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(_, v) in &self.arcs {
            d[v] += 1;
        }
        d
    }
}

/// `K_n'`, the doubled `K_n` with its colouring and fibers, and (once built) `C_n`.
#[derive(Clone, Debug)]
pub struct KnBundle {
    pub base: BaseBn,
    pub kn_prime: KnPrime,
    pub kn: Graph,
    /// `Blue`, `Yellow` or `Plain` per edge of `kn`.
    pub colors: Vec<Label>,
    pub fiber: Vec<u8>,
    pub base_of: Vec<Vertex>,
    pub twin: Vec<Vertex>,
    /// Hamiltonian cycle as a vertex sequence.
    pub cn: Option<Vec<Vertex>>,
}

/// Position of a base vertex inside its side.
fn side_index(b: &BaseBn) -> Vec<(bool, usize)> {
    let mut idx = vec![(false, 0); b.graph.n()];
    for (k, &u) in b.upper.iter().enumerate() {
        idx[u] = (false, k);
    }
    for (k, &l) in b.lower.iter().enumerate() {
        idx[l] = (true, k);
    }
    idx
}

impl KnBundle {
    pub fn size_m(&self) -> usize {
        2 * self.base.n + 1
    }

    /// `K_n'` vertex `x_v^c` (class `c` in `0..4`, `v` in the side matching `c`).
    pub fn prime_vertex(&self, c: usize, v: Vertex) -> Vertex {
        prime_id(&side_index(&self.base), self.size_m(), c, v)
    }

    pub fn bar(x: Vertex) -> Vertex {
        2 * x
    }

    pub fn hat(x: Vertex) -> Vertex {
        2 * x + 1
    }

    pub fn blue_edges(&self) -> Vec<EdgeId> {
        self.edges_colored(Label::Blue)
    }

    pub fn yellow_edges(&self) -> Vec<EdgeId> {
        self.edges_colored(Label::Yellow)
    }

    fn edges_colored(&self, l: Label) -> Vec<EdgeId> {
        (0..self.kn.edge_count()).filter(|&e| self.colors[e] == l).collect()
    }

    /// `K_n` with its fiber decomposition, base vertex by base vertex.
    pub fn fibered(&self) -> Result<FiberedGraph> {
        FiberedGraph::new(self.kn.clone(), self.base.graph.clone(), self.fiber.clone(), self.base_of.clone())
    }

    /// Checks that blue and yellow edges form vertex-disjoint 4-cycles
    /// alternating in colour, covering every vertex.
    pub fn check_colored_cycles(&self) -> Result<()> {
        let n = self.kn.n();
        let mut partner = vec![[usize::MAX; 2]; n];
        for (e, &(u, v)) in self.kn.edges().iter().enumerate() {
            let slot = match self.colors[e] {
                Label::Blue => 0,
                Label::Yellow => 1,
                _ => continue,
            };
            for (x, y) in [(u, v), (v, u)] {
                if partner[x][slot] != usize::MAX {
                    return Err(GlimError::InvalidConstruction(format!("vertex {x} has two {} edges", self.colors[e].symbol())));
                }
                partner[x][slot] = y;
            }
        }
        for v in 0..n {
            if partner[v].contains(&usize::MAX) {
                return Err(GlimError::InvalidConstruction(format!("vertex {v} misses a blue or yellow edge")));
            }
            let mut walk = vec![v];
            let mut x = v;
            for step in 0..4 {
                x = partner[x][step % 2];
                walk.push(x);
            }
            let mut distinct = walk[..4].to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            if x != v || distinct.len() != 4 {
                return Err(GlimError::InvalidConstruction(format!("coloured edges at {v} do not close an alternating 4-cycle")));
            }
        }
        Ok(())
    }

    /// For each ordered pair of adjacent fibers `(i, j)`, the vertices of fiber
    /// `i` whose blue edge goes to fiber `j` must be independent in fiber
    /// `i`. Returns the violating `(i, j, edge)` triples.
    pub fn independence_violations(&self) -> Vec<(usize, usize, (Vertex, Vertex))> {
        let mut out = Vec::new();
        let mut blue_to = vec![usize::MAX; self.kn.n()];
        for e in self.blue_edges() {
            let (u, v) = self.kn.edge(e);
            blue_to[u] = self.fiber[v] as usize;
            blue_to[v] = self.fiber[u] as usize;
        }
        for i in 0..4 {
            for j in [(i + 1) % 4, (i + 3) % 4] {
                for &(u, v) in self.kn.edges() {
                    let inside = self.fiber[u] as usize == i && self.fiber[v] as usize == i;
                    if inside && blue_to[u] == j && blue_to[v] == j {
                        out.push((i, j, (u, v)));
                    }
                }
            }
        }
        out
    }

    /// Edges of `C_n`, in cycle order.
    pub fn cycle_edges(&self) -> Option<Vec<EdgeId>> {
        let cn = self.cn.as_ref()?;
        Some(
            (0..cn.len())
                .map(|k| self.kn.edge_id(cn[k], cn[(k + 1) % cn.len()]).expect("cycle edges exist"))
                .collect(),
        )
    }
}

fn prime_id(idx: &[(bool, usize)], m: usize, c: usize, v: Vertex) -> Vertex {
    let (lower, k) = idx[v];
    debug_assert_eq!(lower, c % 2 == 1, "class parity must match the side");
    c * m + k
}

/// Build `K_n'`, then `K_n` by doubling every vertex into twins.
pub fn build_kn(b: &BaseBn) -> Result<KnBundle> {
    b.validate()?;
    let m = 2 * b.n + 1;
    let idx = side_index(b);
    let np = 4 * m;
    // arcs x_s^c -> x_t^{c+1}, with s on the side of class c
    let mut arcs = Vec::with_capacity(4 * b.graph.edge_count());
    for c in 0..4 {
        for &(s, t) in b.graph.edges() {
            let (from, to) = if idx[s].0 == (c % 2 == 1) { (s, t) } else { (t, s) };
            arcs.push((prime_id(&idx, m, c, from), prime_id(&idx, m, (c + 1) % 4, to)));
        }
    }
    arcs.sort_unstable();
    let kn_prime = KnPrime { n: np, arcs };

    let (bar, hat) = (KnBundle::bar, KnBundle::hat);
    let mut edges: Vec<((Vertex, Vertex), Label)> = Vec::new();
    for &(w, v) in &kn_prime.arcs {
        edges.push(((bar(w), hat(v)), Label::Plain));
    }
    for x in 0..np {
        edges.push(((bar(x), hat(x)), Label::Blue));
    }
    // yellow: classes (0,2) over upper vertices, (1,3) over lower ones
    for v in 0..b.graph.n() {
        let c = if idx[v].0 { 1 } else { 0 };
        let (x, y) = (prime_id(&idx, m, c, v), prime_id(&idx, m, c + 2, v));
        edges.push(((bar(x), hat(y)), Label::Yellow));
        edges.push(((hat(x), bar(y)), Label::Yellow));
    }
    let mut edges: Vec<((Vertex, Vertex), Label)> = edges
        .into_iter()
        .map(|((u, v), l)| ((u.min(v), u.max(v)), l))
        .collect();
    edges.sort_unstable();
    let kn = Graph::new(2 * np, edges.iter().map(|p| p.0))?;
    let colors = edges.into_iter().map(|p| p.1).collect();

    // fiber c = {bar x^c} u {hat x^{c+1}}; base vertex is the twin's B-vertex
    let mut fiber = vec![0u8; 2 * np];
    let mut base_of = vec![0; 2 * np];
    let mut twin = vec![0; 2 * np];
    for v in 0..b.graph.n() {
        for c in 0..4 {
            if idx[v].0 != (c % 2 == 1) {
                continue;
            }
            let x = prime_id(&idx, m, c, v);
            fiber[bar(x)] = c as u8;
            fiber[hat(x)] = ((c + 3) % 4) as u8;
            base_of[bar(x)] = v;
            base_of[hat(x)] = v;
            twin[bar(x)] = hat(x);
            twin[hat(x)] = bar(x);
        }
    }
    Ok(KnBundle { base: b.clone(), kn_prime, kn, colors, fiber, base_of, twin, cn: None })
}

/// Lift the directed Hamiltonian cycle of `K_n'` that runs twice around
/// `b.ham` with classes advancing mod 4, and join each twin pair by its blue
/// edge. Stores the vertex sequence and returns the edges in cycle order.
pub fn hamiltonian_cycle_kn(bundle: &mut KnBundle, b: &BaseBn) -> Result<Vec<EdgeId>> {
    if bundle.base != *b {
        return Err(GlimError::Precondition("bundle was not built from this base".into()));
    }
    let m = bundle.size_m();
    let len = b.ham.len();
    let idx = side_index(b);
    let walk: Vec<Vertex> = (0..2 * len).map(|k| prime_id(&idx, m, k % 4, b.ham[k % len])).collect();
    let mut cycle = Vec::with_capacity(4 * len);
    // bar w_0, hat w_1, bar w_1, hat w_2, ..., hat w_0
    for k in 0..walk.len() {
        cycle.push(KnBundle::bar(walk[k]));
        cycle.push(KnBundle::hat(walk[(k + 1) % walk.len()]));
    }
    validate_cycle(&bundle.kn, &cycle)?;
    bundle.cn = Some(cycle);
    Ok(bundle.cycle_edges().expect("cycle just stored"))
}
