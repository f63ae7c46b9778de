//! Balanced separations: an exact minimum search for small graphs, a
//! BFS-layer heuristic for everything else, and the X-balanced variant
//! consumed by the tree-decomposition builder.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::{for_each_subset, mask_to_vec, two_group_split, AdjMasks};
use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// A separation `(A, B)`: two vertex sets covering the graph with no edge
/// between `A \ B` and `B \ A`. The separator is the intersection; the
/// separation is balanced when both strict sides have at most
/// `floor(2n/3)` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
    pub size: usize,
    pub balanced: bool,
}

impl Separation {
    pub fn new(g: &Graph, side_a: VertexSet, side_b: VertexSet) -> Self {
        let size = side_a.intersection(&side_b).len();
        let cap = 2 * g.n() / 3;
        let balanced = side_a.difference(&side_b).len() <= cap
            && side_b.difference(&side_a).len() <= cap;
        Separation {
            side_a,
            side_b,
            size,
            balanced,
        }
    }

    /// The always-valid fallback: both sides are the whole vertex set,
    /// so the separator is everything and both strict sides are empty.
    pub fn trivial(g: &Graph) -> Self {
        Separation::new(g, VertexSet::full(g.n()), VertexSet::full(g.n()))
    }

    pub fn separator(&self) -> VertexSet {
        self.side_a.intersection(&self.side_b)
    }
}

/// Check the separation invariants against `g`; empty means valid.
pub fn validate_separation(g: &Graph, sep: &Separation) -> Vec<String> {
    let mut violations = Vec::new();
    if sep.side_a.validate_for(g).is_err() || sep.side_b.validate_for(g).is_err() {
        violations.push(String::from("side contains vertex outside the graph"));
        return violations;
    }
    if sep.side_a.union(&sep.side_b).len() != g.n() {
        violations.push(String::from("sides do not cover the vertex set"));
    }
    let strict_a = sep.side_a.difference(&sep.side_b);
    let strict_b = sep.side_b.difference(&sep.side_a);
    for u in strict_a.iter() {
        for &v in g.neighbors(u) {
            if strict_b.contains(v) {
                violations.push(alloc::format!("edge ({u}, {v}) crosses the separation"));
            }
        }
    }
    if sep.size != sep.side_a.intersection(&sep.side_b).len() {
        violations.push(String::from("recorded size differs from |A ∩ B|"));
    }
    let cap = 2 * g.n() / 3;
    let balanced = strict_a.len() <= cap && strict_b.len() <= cap;
    if sep.balanced != balanced {
        violations.push(String::from("recorded balance flag is wrong"));
    }
    violations
}

/// Weight profile for the grouping step: vertices inside `x_mask` count
/// 1, everything else 0 (the plain balanced search weights all vertices).
struct WeightProfile {
    x_mask: u64,
    cap: u64,
}

/// Smallest separator (as a mask) such that the components of `G - S` can
/// be split into two groups of weight at most `cap` each. Searches sizes
/// `0..=n` in order; the first hit is the minimum.
fn exact_min_separator(masks: &AdjMasks, profile: &WeightProfile) -> (u64, Vec<bool>, Vec<u64>) {
    let n = masks.n;
    let full = masks.full_mask();
    let mut found: Option<(u64, Vec<bool>, Vec<u64>)> = None;
    for s in 0..=n {
        for_each_subset(n, s, |sep| {
            let alive = full & !sep;
            let comps = masks.components(alive);
            let weights: Vec<u64> = comps
                .iter()
                .map(|&c| u64::from((c & profile.x_mask).count_ones()))
                .collect();
            if weights.iter().any(|&w| w > profile.cap) {
                return false;
            }
            if let Some(choice) = two_group_split(&weights, profile.cap) {
                found = Some((sep, choice, comps));
                return true;
            }
            false
        });
        if found.is_some() {
            break;
        }
    }
    found.expect("separator of size n always works")
}

fn separation_from_masks(
    g: &Graph,
    sep: u64,
    choice: &[bool],
    comps: &[u64],
) -> Separation {
    let mut a = mask_to_vec(sep);
    let mut b = a.clone();
    for (i, &c) in comps.iter().enumerate() {
        let verts = mask_to_vec(c);
        if choice[i] {
            a.extend(verts);
        } else {
            b.extend(verts);
        }
    }
    Separation::new(g, VertexSet::from_unsorted(a), VertexSet::from_unsorted(b))
}

/// Exact minimum-size balanced separation, by iterating candidate
/// separator sizes and checking, per candidate, that the component sizes
/// of `G - S` admit a two-group split within `floor(2n/3)`.
pub fn exact_min_balanced_separation(g: &Graph, n_limit: usize) -> Result<Separation> {
    if g.n() > n_limit {
        return Err(Error::TooLarge(alloc::format!(
            "exact balanced separation limited to {n_limit} vertices, got {} (use the heuristic)",
            g.n()
        )));
    }
    let masks = AdjMasks::new(g)?;
    let profile = WeightProfile {
        x_mask: masks.full_mask(),
        cap: (2 * g.n() / 3) as u64,
    };
    let (sep, choice, comps) = exact_min_separator(&masks, &profile);
    Ok(separation_from_masks(g, sep, &choice, &comps))
}

/// Double-sweep BFS start vertex: a far end of the largest component.
fn pseudo_peripheral(g: &Graph) -> Option<usize> {
    let comps = g.components();
    let largest = comps.iter().max_by_key(|c| c.len())?;
    let start = largest[0];
    let dist = g.bfs_distances(start);
    let far = largest
        .iter()
        .copied()
        .max_by_key(|&v| (dist[v].unwrap_or(0), core::cmp::Reverse(v)))?;
    Some(far)
}

/// Try one candidate separator against a weighting; build the separation
/// when the leftover components group within `cap`.
fn try_candidate(
    g: &Graph,
    cand: &VertexSet,
    weight: impl Fn(usize) -> u64,
    cap: u64,
) -> Option<Separation> {
    let rest = cand.complement(g.n());
    let (sub, map) = crate::graph::induced_subgraph(g, &rest).ok()?;
    let comps = sub.components();
    let weights: Vec<u64> = comps
        .iter()
        .map(|c| c.iter().map(|&v| weight(map[v])).sum())
        .collect();
    if weights.iter().any(|&w| w > cap) {
        return None;
    }
    let choice = two_group_split(&weights, cap)?;
    let mut a: Vec<usize> = cand.iter().collect();
    let mut b = a.clone();
    for (i, comp) in comps.iter().enumerate() {
        let verts = comp.iter().map(|&v| map[v]);
        if choice[i] {
            a.extend(verts);
        } else {
            b.extend(verts);
        }
    }
    Some(Separation::new(
        g,
        VertexSet::from_unsorted(a),
        VertexSet::from_unsorted(b),
    ))
}

/// BFS layers of the largest component, candidates for layer separators.
fn bfs_layers(g: &Graph) -> Vec<VertexSet> {
    let Some(root) = pseudo_peripheral(g) else {
        return Vec::new();
    };
    let dist = g.bfs_distances(root);
    let depth = dist.iter().flatten().copied().max().unwrap_or(0);
    (0..=depth)
        .map(|d| {
            (0..g.n())
                .filter(|&v| dist[v] == Some(d))
                .collect::<VertexSet>()
        })
        .collect()
}

/// Valid balanced separation, not necessarily minimum: BFS layering from
/// a pseudo-peripheral vertex, taking the smallest layer whose removal
/// admits a balanced component split, with `(V, V)` as the fallback.
pub fn heuristic_balanced_separation(g: &Graph) -> Separation {
    let cap = (2 * g.n() / 3) as u64;
    let weight = |_v: usize| 1u64;
    let mut best: Option<Separation> = None;
    let mut candidates = alloc::vec![VertexSet::new()];
    candidates.extend(bfs_layers(g));
    for cand in &candidates {
        if let Some(sep) = try_candidate(g, cand, weight, cap) {
            if best.as_ref().is_none_or(|b| sep.size < b.size) {
                best = Some(sep);
            }
        }
    }
    best.unwrap_or_else(|| Separation::trivial(g))
}

/// Separation leaving at most `2|X|/3` of `X` strictly on either side,
/// of size within `size_budget`. Exact minimum search up to 30 vertices,
/// BFS-layer heuristic beyond; the trivial separation backs the search
/// when `size_budget >= n`.
pub fn x_balanced_separator(
    g: &Graph,
    x: &VertexSet,
    size_budget: usize,
) -> Result<Separation> {
    x.validate_for(g)?;
    let cap = (2 * x.len() / 3) as u64;
    if g.n() <= 30 {
        let masks = AdjMasks::new(g)?;
        let mut x_mask = 0u64;
        for v in x.iter() {
            x_mask |= 1 << v;
        }
        let profile = WeightProfile { x_mask, cap };
        let (sep, choice, comps) = exact_min_separator(&masks, &profile);
        let separation = separation_from_masks(g, sep, &choice, &comps);
        if separation.size > size_budget {
            return Err(Error::BudgetExceeded {
                best: separation.size,
                context: alloc::format!(" (budget {size_budget}, |X|={})", x.len()),
            });
        }
        return Ok(separation);
    }
    let weight = |v: usize| u64::from(x.contains(v));
    let mut best: Option<Separation> = None;
    let mut candidates = alloc::vec![VertexSet::new()];
    candidates.extend(bfs_layers(g));
    for cand in &candidates {
        if let Some(sep) = try_candidate(g, cand, weight, cap) {
            if best.as_ref().is_none_or(|b| sep.size < b.size) {
                best = Some(sep);
            }
        }
    }
    let best = best.unwrap_or_else(|| Separation::trivial(g));
    if best.size > size_budget {
        return Err(Error::BudgetExceeded {
            best: best.size,
            context: alloc::format!(" (budget {size_budget}, |X|={})", x.len()),
        });
    }
    Ok(best)
}
