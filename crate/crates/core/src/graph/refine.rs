//! Colour refinement on vertex-coloured graphs with coloured arcs.
//!
//! A colouring is an ordered partition: `colors[v]` is the index of the cell
//! holding `v`, cells numbered `0..k` in order. Refinement only ever splits
//! cells, and new cell indices depend on nothing but the structure, so the
//! result is invariant under isomorphism.

use super::{EdgeLabel, RootedBall};

/// Arc colour for an unlabelled edge.
pub(crate) const PLAIN_ARC: u32 = 0;

#[derive(Clone, Debug)]
pub(crate) struct ArcGraph {
    pub(crate) vcolor: Vec<u64>,
    /// `(neighbour, arc colour)` sorted by neighbour.
    pub(crate) adj: Vec<Vec<(u32, u32)>>,
}

/// Arc colour of `from -> to` for a labelled edge; `1 + 3*label + dir`
/// with dir 0 unoriented, 1 leaving `from`, 2 entering `from`.
pub(crate) fn arc_color(label: &EdgeLabel, from: usize) -> u32 {
    let dir = match label.tail {
        None => 0,
        Some(t) if t == from => 1,
        Some(_) => 2,
    };
    1 + 3 * label.label.index() + dir
}

impl ArcGraph {
    pub(crate) fn from_ball(ball: &RootedBall) -> ArcGraph {
        let g = &ball.graph;
        let adj = (0..g.n())
            .map(|v| {
                g.incident(v)
                    .iter()
                    .map(|&(w, e)| {
                        let c = match &ball.labels {
                            Some(l) => arc_color(&l[e], v),
                            None => PLAIN_ARC,
                        };
                        (w as u32, c)
                    })
                    .collect()
            })
            .collect();
        ArcGraph { vcolor: ball.dist.iter().map(|&d| d as u64).collect(), adj }
    }

    pub(crate) fn n(&self) -> usize {
        self.adj.len()
    }

    /// Disjoint union; the second graph's vertices are shifted by `self.n()`.
    pub(crate) fn union(&self, other: &ArcGraph) -> ArcGraph {
        let shift = self.n() as u32;
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nbrs| nbrs.iter().map(|&(w, c)| (w + shift, c)).collect()),
        );
        let mut vcolor = self.vcolor.clone();
        vcolor.extend_from_slice(&other.vcolor);
        ArcGraph { vcolor, adj }
    }

    /// Initial ordered partition from vertex colours.
    pub(crate) fn initial_colors(&self) -> Vec<u32> {
        let mut distinct = self.vcolor.clone();
        distinct.sort_unstable();
        distinct.dedup();
        self.vcolor
            .iter()
            .map(|c| distinct.binary_search(c).expect("present") as u32)
            .collect()
    }
}

/// Number of cells of a colouring with indices `0..k`.
pub(crate) fn cell_count(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Split `v` off into its own cell, placed just before the rest of its old cell.
pub(crate) fn individualize(colors: &mut [u32], vs: &[usize]) {
    let c = colors[vs[0]];
    debug_assert!(vs.iter().all(|&v| colors[v] == c));
    for (w, cw) in colors.iter_mut().enumerate() {
        if *cw > c || (*cw == c && !vs.contains(&w)) {
            *cw += 1;
        }
    }
}

/// Refine to the coarsest equitable partition below `colors`.
///
/// Returns the trace: a flat description of the final quotient (per cell:
/// size, then the sorted neighbourhood signature of its members). Equal
/// inputs up to isomorphism give equal traces.
pub(crate) fn refine(g: &ArcGraph, colors: &mut Vec<u32>) -> Vec<u64> {
    let n = g.n();
    let mut cells = cell_count(colors);
    let mut sig: Vec<u64> = Vec::new();
    let mut offs: Vec<usize> = vec![0; n + 1];
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        sig.clear();
        for v in 0..n {
            offs[v] = sig.len();
            let start = sig.len();
            for &(w, c) in &g.adj[v] {
                sig.push(((c as u64) << 32) | colors[w as usize] as u64);
            }
            sig[start..].sort_unstable();
        }
        offs[n] = sig.len();
        let key = |v: usize| (colors[v], &sig[offs[v]..offs[v + 1]]);
        order.sort_by(|&x, &y| key(x).cmp(&key(y)));
        let mut next = vec![0u32; n];
        let mut k = 0u32;
        for i in 0..n {
            if i > 0 && key(order[i]) != key(order[i - 1]) {
                k += 1;
            }
            next[order[i]] = k;
        }
        let new_cells = if n == 0 { 0 } else { k as usize + 1 };
        if new_cells == cells {
            // stable: emit trace
            let mut trace = Vec::with_capacity(n + sig.len());
            let mut i = 0;
            while i < n {
                let v = order[i];
                let mut j = i;
                while j < n && key(order[j]) == key(v) {
                    j += 1;
                }
                trace.push((j - i) as u64);
                trace.push((offs[v + 1] - offs[v]) as u64);
                trace.extend_from_slice(&sig[offs[v]..offs[v + 1]]);
                i = j;
            }
            return trace;
        }
        cells = new_cells;
        *colors = next;
    }
}
