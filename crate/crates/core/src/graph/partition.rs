//! Ordered partitions with incremental equitable refinement.
//!
//! Cells are contiguous ranges of `lab` and are named by their start index,
//! so cell order is position order. Refinement processes splitter cells from
//! a queue and splits every cell by the multiset of arc colours its members
//! send into the splitter; only fragments that can still cause splits are
//! queued. Splitting keys are hashes of those multisets: a collision can
//! only leave the partition coarser, never make it depend on vertex names.

use std::collections::VecDeque;

use super::refine::ArcGraph;

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    lab: Vec<u32>,
    /// index of each vertex in `lab`
    pos: Vec<u32>,
    /// start of the cell holding each vertex
    start: Vec<u32>,
    /// cell length, indexed by cell start
    len: Vec<u32>,
    cells: usize,
}

fn arc_weight(c: u32) -> u64 {
    // splitmix64 finaliser
    let mut z = (c as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    (z ^ (z >> 31)) | 1
}

impl Partition {
    /// Cells by vertex colour, in increasing colour order. Returns the
    /// partition and the starts of all its cells.
    pub(crate) fn from_colors(g: &ArcGraph) -> (Partition, Vec<u32>) {
        let n = g.n();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| g.vcolor[v as usize]);
        let mut p = Partition { pos: vec![0; n], start: vec![0; n], len: vec![0; n], lab, cells: 0 };
        let mut starts = Vec::new();
        let mut i = 0;
        while i < n {
            let c = g.vcolor[p.lab[i] as usize];
            let mut j = i;
            while j < n && g.vcolor[p.lab[j] as usize] == c {
                j += 1;
            }
            for k in i..j {
                let v = p.lab[k] as usize;
                p.pos[v] = k as u32;
                p.start[v] = i as u32;
            }
            p.len[i] = (j - i) as u32;
            starts.push(i as u32);
            p.cells += 1;
            i = j;
        }
        (p, starts)
    }

    pub(crate) fn n(&self) -> usize {
        self.lab.len()
    }

    #[cfg(test)]
    pub(crate) fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    /// Start of the first cell with more than one vertex.
    pub(crate) fn first_nonsingleton(&self) -> Option<usize> {
        let mut i = 0;
        while i < self.n() {
            if self.len[i] > 1 {
                return Some(i);
            }
            i += self.len[i] as usize;
        }
        None
    }

    pub(crate) fn cell(&self, s: usize) -> &[u32] {
        &self.lab[s..s + self.len[s] as usize]
    }

    /// `positions()[v]` is the index of `v` in the ordering; canonical
    /// positions once the partition is discrete.
    pub(crate) fn positions(&self) -> &[u32] {
        &self.pos
    }

    /// Split `v` off in front of the rest of its cell; returns the start of
    /// the new singleton cell.
    pub(crate) fn individualize(&mut self, v: usize) -> u32 {
        let s = self.start[v] as usize;
        let l = self.len[s] as usize;
        debug_assert!(l > 1);
        let (pv, first) = (self.pos[v] as usize, self.lab[s]);
        self.lab.swap(s, pv);
        self.pos[first as usize] = pv as u32;
        self.pos[v] = s as u32;
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u32;
        for k in s + 1..s + l {
            self.start[self.lab[k] as usize] = (s + 1) as u32;
        }
        self.cells += 1;
        s as u32
    }

    /// Refine with the given splitters queued; returns the trace.
    pub(crate) fn refine(&mut self, g: &ArcGraph, splitters: &[u32]) -> Vec<u64> {
        let n = self.n();
        let mut queue: VecDeque<u32> = splitters.iter().copied().collect();
        let mut queued = vec![false; n];
        for &s in splitters {
            queued[s as usize] = true;
        }
        let mut acc = vec![0u64; n];
        let mut hit = vec![false; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut marked = vec![false; n];
        let mut cells: Vec<u32> = Vec::new();
        let mut trace = Vec::new();

        while let Some(s) = queue.pop_front() {
            let s = s as usize;
            queued[s] = false;
            trace.push(s as u64);
            for k in s..s + self.len[s] as usize {
                for &(w, c) in &g.adj[self.lab[k] as usize] {
                    if !hit[w as usize] {
                        hit[w as usize] = true;
                        touched.push(w);
                    }
                    acc[w as usize] = acc[w as usize].wrapping_add(arc_weight(c));
                }
            }
            for &w in &touched {
                let t = self.start[w as usize];
                if !marked[t as usize] {
                    marked[t as usize] = true;
                    cells.push(t);
                }
            }
            cells.sort_unstable();
            for &t in &cells {
                marked[t as usize] = false;
                self.split(t as usize, &acc, &mut queue, &mut queued, &mut trace);
            }
            for &w in &touched {
                acc[w as usize] = 0;
                hit[w as usize] = false;
            }
            touched.clear();
            cells.clear();
        }
        trace.push(self.cells as u64);
        trace
    }

    fn split(&mut self, t: usize, acc: &[u64], queue: &mut VecDeque<u32>, queued: &mut [bool], trace: &mut Vec<u64>) {
        let l = self.len[t] as usize;
        if l == 1 {
            return;
        }
        let range = t..t + l;
        self.lab[range.clone()].sort_unstable_by_key(|&v| acc[v as usize]);
        let key = |p: &Partition, k: usize| acc[p.lab[k] as usize];
        if key(self, t) == key(self, t + l - 1) {
            return;
        }
        let was_queued = queued[t];
        let mut frags: Vec<(usize, usize)> = Vec::new();
        let mut i = t;
        while i < t + l {
            let mut j = i;
            while j < t + l && key(self, j) == key(self, i) {
                j += 1;
            }
            frags.push((i, j - i));
            i = j;
        }
        trace.push(t as u64);
        trace.push(frags.len() as u64);
        for &(fs, fl) in &frags {
            trace.push(fl as u64);
            trace.push(key(self, fs));
            self.len[fs] = fl as u32;
            for k in fs..fs + fl {
                let v = self.lab[k] as usize;
                self.pos[v] = k as u32;
                self.start[v] = fs as u32;
            }
        }
        self.cells += frags.len() - 1;
        let skip = if was_queued {
            None
        } else {
            // the first largest fragment need not be queued
            let mut best = 0;
            for (k, &(_, fl)) in frags.iter().enumerate() {
                if fl > frags[best].1 {
                    best = k;
                }
            }
            Some(best)
        };
        for (k, &(fs, _)) in frags.iter().enumerate() {
            if Some(k) != skip && !queued[fs] {
                queued[fs] = true;
                queue.push_back(fs as u32);
            }
        }
    }
}
