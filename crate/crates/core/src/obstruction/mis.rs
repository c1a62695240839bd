//! Maximum independent sets: exact branch-and-bound on bitsets, with a
//! greedy plus local-search fallback above the exact size cap.

use serde::Serialize;

use crate::graph::{Graph, Vertex};

pub const DEFAULT_EXACT_CAP: usize = 150;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MisResult {
    pub size: usize,
    pub witness: Vec<Vertex>,
    pub exact: bool,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Bits {
        let mut b = Bits::new(n);
        for v in 0..n {
            b.set(v);
        }
        b
    }

    fn set(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn clear(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn get(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| 64 * i + w.trailing_zeros() as usize)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(64 * i + b)
            })
        })
    }

    /// `self \ {skip}` is a subset of `other`.
    fn subset_except(&self, skip: usize, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).enumerate().all(|(i, (&a, &b))| {
            let a = if skip / 64 == i { a & !(1 << (skip % 64)) } else { a };
            a & !b == 0
        })
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

}

/// Working graph: `adj` is kept restricted to `alive`.
#[derive(Clone)]
struct State {
    adj: Vec<Bits>,
    alive: Bits,
}

enum Undo {
    Take(usize),
    /// `v` stands for either itself or the pair `{u, w}`.
    Fold { v: usize, u: usize, w: usize },
}

impl State {
    fn from_graph(g: &Graph) -> State {
        let n = g.n();
        let mut adj = vec![Bits::new(n); n];
        for &(u, v) in g.edges() {
            adj[u].set(v);
            adj[v].set(u);
        }
        State { adj, alive: Bits::full(n) }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    fn remove(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.adj[v].ones().collect();
        for x in nbrs {
            self.adj[x].clear(v);
        }
        self.adj[v] = Bits::new(self.alive.0.len() * 64);
        self.alive.clear(v);
    }

    fn take(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.adj[v].ones().collect();
        for x in nbrs {
            self.remove(x);
        }
        self.remove(v);
    }

    fn is_simplicial(&self, v: usize) -> bool {
        self.adj[v].ones().all(|x| self.adj[v].subset_except(x, &self.adj[x]))
    }

    /// Replace the degree-2 vertex `v` and its non-adjacent neighbours by a
    /// single vertex (kept in slot `v`) adjacent to their other neighbours.
    fn fold(&mut self, v: usize) -> Undo {
        let ends: Vec<usize> = self.adj[v].ones().collect();
        let (u, w) = (ends[0], ends[1]);
        let mut merged = self.adj[u].clone();
        merged.or_assign(&self.adj[w]);
        merged.clear(v);
        self.remove(u);
        self.remove(w);
        merged.clear(u);
        merged.clear(w);
        for x in merged.ones() {
            self.adj[x].set(v);
        }
        self.adj[v] = merged;
        Undo::Fold { v, u, w }
    }

    /// Exhaustive reductions; returns the number of vertices they account for.
    fn reduce(&mut self, log: &mut Vec<Undo>) -> usize {
        let mut gained = 0;
        loop {
            let mut changed = false;
            let vs: Vec<usize> = self.alive.ones().collect();
            for v in vs {
                if !self.alive.get(v) {
                    continue;
                }
                if self.is_simplicial(v) {
                    self.take(v);
                    log.push(Undo::Take(v));
                    gained += 1;
                    changed = true;
                } else if self.degree(v) == 2 {
                    log.push(self.fold(v));
                    gained += 1;
                    changed = true;
                }
            }
            // a vertex whose closed neighbourhood contains a neighbour's can be dropped
            let vs: Vec<usize> = self.alive.ones().collect();
            for v in vs {
                if !self.alive.get(v) {
                    continue;
                }
                let dominated = self.adj[v].ones().any(|u| self.adj[u].subset_except(v, &self.adj[v]));
                if dominated {
                    self.remove(v);
                    changed = true;
                }
            }
            if !changed {
                return gained;
            }
        }
    }

    fn components(&self) -> Vec<Bits> {
        let n = self.adj.len();
        let mut left = self.alive.clone();
        let mut out = Vec::new();
        while let Some(s) = left.first() {
            let mut comp = Bits::new(n);
            let mut stack = vec![s];
            comp.set(s);
            left.clear(s);
            while let Some(x) = stack.pop() {
                let fresh = self.adj[x].and(&left);
                for y in fresh.ones() {
                    left.clear(y);
                    comp.set(y);
                    stack.push(y);
                }
            }
            out.push(comp);
        }
        out
    }

    /// Number of cliques in a greedy clique cover of the alive vertices.
    fn clique_cover_bound(&self) -> usize {
        let mut order: Vec<usize> = self.alive.ones().collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        // common neighbourhood of each clique's members
        let mut common: Vec<Bits> = Vec::new();
        for v in order {
            match common.iter_mut().find(|c| c.get(v)) {
                Some(c) => *c = c.and(&self.adj[v]),
                None => common.push(self.adj[v].clone()),
            }
        }
        common.len()
    }
}

fn unwind(log: Vec<Undo>, sol: &mut Bits) {
    for op in log.into_iter().rev() {
        match op {
            Undo::Take(v) => sol.set(v),
            Undo::Fold { v, u, w } => {
                if sol.get(v) {
                    sol.clear(v);
                    sol.set(u);
                    sol.set(w);
                } else {
                    sol.set(v);
                }
            }
        }
    }
}

/// Largest independent set of `st` if it has at least `need` vertices.
fn solve(mut st: State, need: usize) -> Option<Bits> {
    let n = st.adj.len();
    let mut log = Vec::new();
    let gained = st.reduce(&mut log);
    let need = need.saturating_sub(gained);
    if st.alive.is_empty() {
        if need > 0 {
            return None;
        }
        let mut sol = Bits::new(n);
        unwind(log, &mut sol);
        return Some(sol);
    }
    if st.clique_cover_bound() < need {
        return None;
    }

    let comps = st.components();
    let mut sol = if comps.len() > 1 {
        let mut comps: Vec<(usize, Bits)> = comps
            .into_iter()
            .map(|c| (State { adj: st.adj.clone(), alive: c.clone() }.clique_cover_bound(), c))
            .collect();
        comps.sort_by_key(|(_, c)| c.count());
        let mut rest_bound: usize = comps.iter().map(|(b, _)| b).sum();
        let mut found = 0;
        let mut sol = Bits::new(n);
        for (bound, c) in comps {
            rest_bound -= bound;
            let local_need = need.saturating_sub(found + rest_bound);
            let part = solve(State { adj: st.adj.clone(), alive: c }, local_need)?;
            found += part.count();
            sol.or_assign(&part);
        }
        if found < need {
            return None;
        }
        sol
    } else {
        let v = st.alive.ones().max_by_key(|&v| (st.degree(v), std::cmp::Reverse(v))).expect("nonempty");
        let mut need = need;
        let mut best: Option<Bits> = None;
        let mut with = st.clone();
        with.take(v);
        if let Some(mut s) = solve(with, need.saturating_sub(1)) {
            s.set(v);
            need = s.count() + 1;
            best = Some(s);
        }
        st.remove(v);
        if let Some(s) = solve(st, need) {
            best = Some(s);
        }
        best?
    };
    unwind(log, &mut sol);
    Some(sol)
}

fn greedy(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut removed = vec![false; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut in_set = vec![false; n];
    while let Some(v) = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)) {
        in_set[v] = true;
        let mut gone = vec![v];
        gone.extend(g.neighbors(v).filter(|&w| !removed[w]));
        for &x in &gone {
            removed[x] = true;
        }
        for &x in &gone {
            for y in g.neighbors(x) {
                deg[y] = deg[y].saturating_sub(1);
            }
        }
    }
    in_set
}

/// Repeated (1,2)-swaps: drop one solution vertex, add two of its
/// non-adjacent neighbours that have no other solution neighbour.
fn local_search(g: &Graph, in_set: &mut [bool]) {
    let n = g.n();
    let mut tight = vec![0usize; n];
    for v in 0..n {
        tight[v] = g.neighbors(v).filter(|&w| in_set[w]).count();
    }
    'improve: loop {
        for x in 0..n {
            if !in_set[x] {
                continue;
            }
            let cands: Vec<Vertex> = g.neighbors(x).filter(|&w| tight[w] == 1).collect();
            for (i, &a) in cands.iter().enumerate() {
                for &b in &cands[i + 1..] {
                    if !g.has_edge(a, b) {
                        in_set[x] = false;
                        for y in g.neighbors(x) {
                            tight[y] -= 1;
                        }
                        for z in [a, b] {
                            in_set[z] = true;
                            for y in g.neighbors(z) {
                                tight[y] += 1;
                            }
                        }
                        continue 'improve;
                    }
                }
            }
        }
        // free vertices with no solution neighbour
        let mut grew = false;
        for v in 0..n {
            if !in_set[v] && tight[v] == 0 {
                in_set[v] = true;
                for y in g.neighbors(v) {
                    tight[y] += 1;
                }
                grew = true;
            }
        }
        if !grew {
            return;
        }
    }
}

/// Maximum independent set; exact when `g.n() <= exact_cap`, otherwise a
/// heuristic solution with a clique-cover upper bound.
pub fn max_independent_set(g: &Graph, exact_cap: usize) -> MisResult {
    let n = g.n();
    if n <= exact_cap {
        let sol = solve(State::from_graph(g), 0).expect("need 0 always succeeds");
        let witness: Vec<Vertex> = sol.ones().collect();
        debug_assert!(g.is_independent(&witness).is_none());
        let size = witness.len();
        return MisResult { size, witness, exact: true, lower: size, upper: size };
    }
    let mut in_set = greedy(g);
    local_search(g, &mut in_set);
    let witness: Vec<Vertex> = (0..n).filter(|&v| in_set[v]).collect();
    let upper = State::from_graph(g).clique_cover_bound();
    let size = witness.len();
    MisResult { size, witness, exact: size == upper, lower: size, upper }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_named_graphs() {
        assert_eq!(max_independent_set(&Graph::cycle(4), 150).size, 2);
        assert_eq!(max_independent_set(&Graph::complete(4), 150).size, 1);
        assert_eq!(max_independent_set(&Graph::petersen(), 150).size, 4);
        assert_eq!(max_independent_set(&Graph::cycle(7), 150).size, 3);
        assert_eq!(max_independent_set(&Graph::path(7), 150).size, 4);
        assert_eq!(max_independent_set(&Graph::empty(5), 150).size, 5);
        assert_eq!(max_independent_set(&Graph::empty(0), 150).size, 0);
    }

    #[test]
    fn witnesses_are_independent() {
        let g = Graph::petersen();
        let r = max_independent_set(&g, 150);
        assert!(g.is_independent(&r.witness).is_none());
        assert!(r.exact);
    }

    #[test]
    fn heuristic_mode_brackets_the_optimum() {
        let g = Graph::petersen();
        let r = max_independent_set(&g, 5);
        assert!(g.is_independent(&r.witness).is_none());
        assert!(r.lower <= 4 && 4 <= r.upper);
        assert_eq!(r.size, r.witness.len());
    }
}
