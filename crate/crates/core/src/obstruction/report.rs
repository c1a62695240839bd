//! End-to-end runs of both obstruction arguments on generated instances.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::mis::{max_independent_set, MisResult, DEFAULT_EXACT_CAP};
use super::search::{labelling_search_with, Strategy};
use super::{classify_orientations, find_r_good_with, is_independent, LimitPattern, RIGID_RADIUS};
use crate::constructions::{
    build_kn, hamiltonian_cycle_kn, product_c4, random_bipartite_hamiltonian, random_regular, validate_cycle,
    FiberedGraph,
};
use crate::error::{GlimError, Result};
use crate::graph::{girth, Girth, Label, Vertex};
use crate::limits::{marked_ball_properties, MarkedGraph};
use crate::rng::stream;

/// Independence ratio constant quoted alongside the measured values.
pub const EPSILON_REFERENCE: &str = "1/26";

#[derive(Clone, Copy, Debug)]
pub struct Theorem1Options {
    /// Search budget per trial.
    pub budget: usize,
    pub exact_cap: usize,
    /// Use one strategy for every trial instead of rotating through all of them.
    pub strategy: Option<Strategy>,
}

impl Default for Theorem1Options {
    fn default() -> Self {
        Theorem1Options { budget: 50, exact_cap: DEFAULT_EXACT_CAP, strategy: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MisSummary {
    pub size: usize,
    pub exact: bool,
    pub lower: usize,
    pub upper: usize,
}

impl From<&MisResult> for MisSummary {
    fn from(m: &MisResult) -> Self {
        MisSummary { size: m.size, exact: m.exact, lower: m.lower, upper: m.upper }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Instance {
    pub n: usize,
    pub d: usize,
    pub radius: usize,
    pub seed: u64,
    pub trials: usize,
    pub budget: usize,
    pub exact_cap: usize,
    pub strategy: Option<Strategy>,
    pub vertices: usize,
    pub girth: Girth,
    /// Independence number of the base graph (an upper bound when not exact).
    pub alpha: usize,
    pub alpha_exact: bool,
    /// Independence numbers of the four fiber graphs.
    pub alpha_fibers: Vec<usize>,
    pub alpha_product: MisSummary,
    /// `2 alpha / n`, the largest good fraction the argument allows.
    pub bound: f64,
    pub epsilon_reference: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Trial {
    pub index: usize,
    pub strategy: Strategy,
    pub fraction: f64,
    pub good: usize,
    pub preserving: usize,
    pub reversing: usize,
    pub s_fwd_independent: bool,
    pub s_rev_independent: bool,
    pub fibers_independent: bool,
    pub adjacent_same_class: usize,
    pub bound: f64,
    pub within_bound: bool,
    pub search_agrees: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub instance: Theorem1Instance,
    pub trials: Vec<Theorem1Trial>,
    pub pass: bool,
}

pub fn theorem1_report(n: usize, r: usize, trials: usize, seed: u64) -> Result<Theorem1Report> {
    theorem1_report_with(n, r, trials, seed, Theorem1Options::default())
}

/// Builds `H x C4` for a random cubic `H`, then for each trial searches for a
/// labelling, finds its R-good vertices, splits them by orientation and
/// checks both classes for independence and the good fraction against
/// `2 alpha(H) / |V(H)|`.
pub fn theorem1_report_with(n: usize, r: usize, trials: usize, seed: u64, opts: Theorem1Options) -> Result<Theorem1Report> {
    if r < RIGID_RADIUS {
        return Err(GlimError::Precondition(format!("the argument needs radius >= {RIGID_RADIUS}")));
    }
    let h = random_regular(n, 3, seed)?;
    let host = product_c4(&h)?;
    let alpha_h = max_independent_set(&h, opts.exact_cap);
    let alpha = if alpha_h.exact { alpha_h.size } else { alpha_h.upper };
    let alpha_fibers: Vec<usize> = (0..4)
        .map(|i| {
            let m = max_independent_set(&host.fiber_graph(i), opts.exact_cap);
            if m.exact { m.size } else { m.upper }
        })
        .collect();
    let alpha_product = max_independent_set(&host.graph, opts.exact_cap);
    let bound = 2.0 * alpha as f64 / n as f64;
    let pattern = LimitPattern::new(r);

    let mut seeds = stream(seed, "theorem1/trials");
    let trial_seeds: Vec<u64> = (0..trials).map(|_| seeds.gen()).collect();
    let results: Vec<Theorem1Trial> = trial_seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| run_trial(&pattern, &host, i, s, &opts, bound, alpha))
        .collect::<Result<_>>()?;

    let pass = results.iter().all(|t| t.pass) && alpha_fibers.iter().all(|&a| a == alpha);
    Ok(Theorem1Report {
        instance: Theorem1Instance {
            n,
            d: 3,
            radius: r,
            seed,
            trials,
            budget: opts.budget,
            exact_cap: opts.exact_cap,
            strategy: opts.strategy,
            vertices: host.graph.n(),
            girth: girth(&h),
            alpha,
            alpha_exact: alpha_h.exact,
            alpha_fibers,
            alpha_product: MisSummary::from(&alpha_product),
            bound,
            epsilon_reference: EPSILON_REFERENCE,
        },
        trials: results,
        pass,
    })
}

/// Whether the vertices of `set` in fiber `i` are independent in the fiber
/// graph and no more numerous than `alpha`, for every fiber.
fn fibers_ok(host: &FiberedGraph, set: &[Vertex], alpha: usize) -> bool {
    (0..4).all(|i| {
        let in_fiber: Vec<Vertex> = set.iter().filter(|&&v| host.fiber[v] as usize == i).map(|&v| host.base_of[v]).collect();
        in_fiber.len() <= alpha && host.fiber_graph(i).is_independent(&in_fiber).is_none()
    })
}

fn run_trial(
    pattern: &LimitPattern,
    host: &FiberedGraph,
    index: usize,
    seed: u64,
    opts: &Theorem1Options,
    bound: f64,
    alpha: usize,
) -> Result<Theorem1Trial> {
    let strategy = opts.strategy.unwrap_or(Strategy::ALL[index % Strategy::ALL.len()]);
    let found = labelling_search_with(pattern, host, strategy, opts.budget, seed)?;
    let good = find_r_good_with(pattern, host, &found.labelling)?;
    let classes = classify_orientations(&good, host)?;
    let g = &host.graph;
    let s_fwd_independent = is_independent(g, &classes.preserving).independent;
    let s_rev_independent = is_independent(g, &classes.reversing).independent;
    let fibers_independent = fibers_ok(host, &classes.preserving, alpha) && fibers_ok(host, &classes.reversing, alpha);
    let adjacent_same_class = classes.same_class_edges(g).len();
    let fraction = good.fraction(g.n());
    // |good| / |V(G)| <= 2 alpha / |V(H)|, in integers
    let within_bound = good.good.len() * host.base_size() <= 2 * alpha * g.n();
    let search_agrees = good.good.len() == found.good;
    Ok(Theorem1Trial {
        index,
        strategy,
        fraction,
        good: good.good.len(),
        preserving: classes.preserving.len(),
        reversing: classes.reversing.len(),
        s_fwd_independent,
        s_rev_independent,
        fibers_independent,
        adjacent_same_class,
        bound,
        within_bound,
        search_agrees,
        pass: s_fwd_independent
            && s_rev_independent
            && fibers_independent
            && adjacent_same_class == 0
            && within_bound
            && search_agrees,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem2Instance {
    pub n: usize,
    pub seed: u64,
    pub base_girth: Girth,
    pub kn_prime_vertices: usize,
    pub kn_prime_arcs: usize,
    pub vertices: usize,
    pub edges: usize,
    pub blue: usize,
    pub yellow: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem2Report {
    pub instance: Theorem2Instance,
    pub checks: Vec<Check>,
    pub pass: bool,
}

fn check(name: &'static str, pass: bool, detail: impl Into<String>) -> Check {
    Check { name, pass, detail: detail.into() }
}

fn outcome(name: &'static str, r: Result<()>) -> Check {
    match r {
        Ok(()) => check(name, true, ""),
        Err(e) => check(name, false, e.to_string()),
    }
}

/// Builds `B_n`, `K_n'`, `K_n` and `C_n` and validates every structural
/// claim about them.
pub fn theorem2_report(n: usize, seed: u64) -> Result<Theorem2Report> {
    let b = random_bipartite_hamiltonian(n, seed)?;
    let mut k = build_kn(&b)?;
    let cycle = hamiltonian_cycle_kn(&mut k, &b)?;
    let m = 4 * n + 2;
    let mut checks = Vec::new();

    let (outd, ind) = (k.kn_prime.out_degree(), k.kn_prime.in_degree());
    checks.push(check(
        "kn_prime_degrees",
        outd.iter().chain(&ind).all(|&d| d == 3),
        format!("out {:?}..{:?}, in {:?}..{:?}", outd.iter().min(), outd.iter().max(), ind.iter().min(), ind.iter().max()),
    ));
    let class = |x: Vertex| x / (2 * n + 1);
    checks.push(check(
        "kn_prime_classes",
        k.kn_prime.arcs.iter().all(|&(u, v)| class(v) == (class(u) + 1) % 4),
        "arcs go from each class to the next",
    ));
    checks.push(check("kn_prime_vertex_count", k.kn_prime.n == 2 * m, format!("{} = 2(4n+2) = {}", k.kn_prime.n, 2 * m)));
    checks.push(check("vertex_count", k.kn.n() == 4 * m, format!("{} = 4(4n+2) = {}", k.kn.n(), 4 * m)));
    checks.push(check("five_regular", k.kn.is_regular(5), ""));
    checks.push(outcome("hamiltonian", validate_cycle(&k.kn, k.cn.as_deref().unwrap_or_default())));
    let alternates = cycle.iter().enumerate().all(|(i, &e)| (k.colors[e] == Label::Blue) == (i % 2 == 1));
    checks.push(check("blue_alternation", alternates && cycle.len() == 4 * m, format!("cycle length {}", cycle.len())));
    let blue = k.blue_edges().len();
    checks.push(check("blue_count", blue == k.kn_prime.n, format!("{blue} blue edges")));
    let fibered = k.fibered();
    checks.push(match &fibered {
        Ok(f) => match f.fiber_mismatch() {
            None => check("fibers_induce_base", true, ""),
            Some(i) => check("fibers_induce_base", false, format!("fiber {i} differs from the base")),
        },
        Err(e) => check("fibers_induce_base", false, e.to_string()),
    });
    checks.push(outcome("colored_cycles_alternate", k.check_colored_cycles()));
    let violations = k.independence_violations();
    checks.push(check(
        "independence_property",
        violations.is_empty(),
        violations.first().map(|v| format!("{} violations, first {:?}", violations.len(), v)).unwrap_or_default(),
    ));
    if let Ok(f) = &fibered {
        let marked = MarkedGraph::new(k.kn.clone(), &cycle)?;
        for (name, r) in [("marked_balls_r1", 1), ("marked_balls_r2", 2)] {
            let rep = marked_ball_properties(&marked, f, r)?;
            checks.push(check(
                name,
                rep.pass(),
                format!("{} tree-ball vertices, {} violations", rep.tree_vertices, rep.violations.len()),
            ));
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(Theorem2Report {
        instance: Theorem2Instance {
            n,
            seed,
            base_girth: b.achieved_girth,
            kn_prime_vertices: k.kn_prime.n,
            kn_prime_arcs: k.kn_prime.arcs.len(),
            vertices: k.kn.n(),
            edges: k.kn.edge_count(),
            blue,
            yellow: k.yellow_edges().len(),
        },
        checks,
        pass,
    })
}
