//! Word-sized vertex-set machinery for the exact searches. Everything in
//! here assumes the host graph has at most 64 vertices.

use alloc::vec::Vec;

use crate::graph::Graph;
use crate::{Error, Result};

pub(crate) const MAX_BITSET_VERTICES: usize = 64;

/// Adjacency of a graph packed into one `u64` mask per vertex.
#[derive(Clone, Debug)]
pub(crate) struct AdjMasks {
    pub n: usize,
    pub adj: Vec<u64>,
}

impl AdjMasks {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        if n > MAX_BITSET_VERTICES {
            return Err(Error::TooLarge(alloc::format!(
                "exact search supports at most {MAX_BITSET_VERTICES} vertices, got {n}"
            )));
        }
        let mut adj = alloc::vec![0u64; n];
        for v in 0..n {
            for &u in g.neighbors(v) {
                adj[v] |= 1u64 << u;
            }
        }
        Ok(Self { n, adj })
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Connected components of the subgraph induced by `alive`, as masks.
    pub fn components(&self, alive: u64) -> Vec<u64> {
        let mut comps = Vec::new();
        let mut remaining = alive;
        while remaining != 0 {
            let seed = remaining & remaining.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut grow = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    grow |= self.adj[v];
                }
                frontier = grow & alive & !comp;
                comp |= frontier;
            }
            comps.push(comp);
            remaining &= !comp;
        }
        comps
    }
}

/// Iterate all `size`-subsets of the low `n` bits in increasing numeric
/// order (Gosper's hack). `f` returns `true` to stop early.
pub(crate) fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(u64) -> bool) {
    debug_assert!(n <= 64);
    if size > n {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s: u64 = (1u64 << size) - 1;
    loop {
        if f(s) {
            return;
        }
        // Gosper's hack: next subset with the same popcount.
        let c = s & s.wrapping_neg();
        let r = s + c;
        if r > limit || r == 0 {
            return;
        }
        s = (((r ^ s) >> 2) / c) | r;
        if s > limit {
            return;
        }
    }
}

/// Can `weights` be split into two groups with each group sum at most
/// `cap`? Returns per-index membership of one feasible group if so.
/// Zero-weight items are placed in group one.
pub(crate) fn two_group_split(weights: &[u64], cap: u64) -> Option<Vec<bool>> {
    let total: u64 = weights.iter().sum();
    if total > 2 * cap {
        return None;
    }
    let lo = total.saturating_sub(cap);
    // Achievable subset sums as a bitset over 0..=total, with per-item
    // snapshots kept for reconstruction.
    let words = (total as usize + 64) / 64;
    let mut reach = alloc::vec![0u64; words];
    reach[0] = 1;
    let mut snaps: Vec<Vec<u64>> = Vec::with_capacity(weights.len());
    for &w in weights {
        snaps.push(reach.clone());
        if w == 0 {
            continue;
        }
        shift_or(&mut reach, w as usize);
    }
    let target = (lo..=cap.min(total)).find(|&s| get_bit(&reach, s as usize))?;
    // Walk backwards through the snapshots to recover one choice.
    let mut chosen = alloc::vec![false; weights.len()];
    let mut s = target;
    for i in (0..weights.len()).rev() {
        let w = weights[i];
        if w == 0 {
            chosen[i] = true;
            continue;
        }
        if s >= w && get_bit(&snaps[i], (s - w) as usize) {
            chosen[i] = true;
            s -= w;
        }
    }
    debug_assert_eq!(s, 0);
    Some(chosen)
}

fn get_bit(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn shift_or(bits: &mut [u64], by: usize) {
    let words = bits.len();
    let word_shift = by / 64;
    let bit_shift = by % 64;
    for i in (0..words).rev() {
        let mut v = 0u64;
        if i >= word_shift {
            v = bits[i - word_shift] << bit_shift;
            if bit_shift > 0 && i > word_shift {
                v |= bits[i - word_shift - 1] >> (64 - bit_shift);
            }
        }
        bits[i] |= v;
    }
}

pub(crate) fn mask_to_vec(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}
