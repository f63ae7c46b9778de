//! Packing-driven approximation: a PTAS-style independent-set routine
//! and a fixed-subgraph test, both built on exact per-component solvers
//! that stay fast because complementary packings leave only small
//! components behind.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use crate::fragility::{thickness, validate_complementary, FractionalPacking, WitnessClassSpec};
use crate::graph::{induced_subgraph, Graph, VertexSet};
use crate::{Error, Result};

/// Components above this size are out of range for the exact
/// independent-set solver.
pub const MAX_EXACT_MIS_COMPONENT: usize = 26;

/// Components above this size are out of range for the exact subgraph
/// isomorphism search used by [`subgraph_test`].
pub const MAX_ISO_COMPONENT: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSetResult {
    pub vertices: VertexSet,
    pub size: usize,
    /// Index of the removal set that produced the winner; `None` when the
    /// solver ran directly on the input graph.
    pub support_index: Option<usize>,
}

pub fn is_independent_set(g: &Graph, vs: &VertexSet) -> bool {
    vs.validate_for(g).is_ok()
        && vs
            .iter()
            .all(|u| g.neighbors(u).iter().all(|&v| !vs.contains(v)))
}

/// Best independent set of one component (as a mask), by branching on a
/// maximum-degree vertex. Ties between branches go to the exclusion
/// branch, which keeps the result deterministic.
fn mis_mask(adj: &[u64], mask: u64) -> u64 {
    if mask == 0 {
        return 0;
    }
    let mut best_v = usize::MAX;
    let mut best_deg = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let d = (adj[v] & mask).count_ones() as usize;
        if best_v == usize::MAX || d > best_deg {
            best_v = v;
            best_deg = d;
        }
    }
    if best_deg <= 1 {
        // Isolated vertices plus one endpoint per isolated edge: take the
        // lower-numbered endpoint of each.
        let mut take = 0u64;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let nb = adj[v] & mask;
            if nb == 0 || nb.trailing_zeros() as usize > v {
                take |= 1 << v;
            }
        }
        return take;
    }
    let v = best_v;
    let without = mis_mask(adj, mask & !(1 << v));
    let with = (1 << v) | mis_mask(adj, mask & !adj[v] & !(1 << v));
    if with.count_ones() > without.count_ones() {
        with
    } else {
        without
    }
}

fn component_mis(g: &Graph, comp: &[usize]) -> Vec<usize> {
    let mut local_adj = alloc::vec![0u64; comp.len()];
    for (i, &v) in comp.iter().enumerate() {
        for &u in g.neighbors(v) {
            if let Ok(j) = comp.binary_search(&u) {
                local_adj[i] |= 1u64 << j;
            }
        }
    }
    let full = if comp.len() == 64 {
        u64::MAX
    } else {
        (1u64 << comp.len()) - 1
    };
    let best = mis_mask(&local_adj, full);
    (0..comp.len())
        .filter(|i| best >> i & 1 == 1)
        .map(|i| comp[i])
        .collect()
}

/// Exact independence number, component by component. Refuses unless the
/// whole graph or each component fits the exact range.
pub fn brute_alpha(g: &Graph) -> Result<usize> {
    let comps = g.components();
    if g.n() > MAX_EXACT_MIS_COMPONENT {
        if let Some(c) = comps.iter().find(|c| c.len() > MAX_EXACT_MIS_COMPONENT) {
            return Err(Error::TooLarge(alloc::format!(
                "component of {} vertices exceeds the exact range {MAX_EXACT_MIS_COMPONENT}",
                c.len()
            )));
        }
    }
    Ok(comps.iter().map(|c| component_mis(g, c).len()).sum())
}

/// Exact maximum independent set with certificate, requiring every
/// component to fit in `comp_bound <= 26` vertices.
pub fn exact_max_independent_set(g: &Graph, comp_bound: usize) -> Result<IndependentSetResult> {
    if comp_bound > MAX_EXACT_MIS_COMPONENT {
        return Err(Error::InvalidArgument(alloc::format!(
            "component bound {comp_bound} exceeds the exact range {MAX_EXACT_MIS_COMPONENT}"
        )));
    }
    let mut vertices = Vec::new();
    for comp in g.components() {
        if comp.len() > comp_bound {
            return Err(Error::InvalidArgument(alloc::format!(
                "component containing vertex {} has {} vertices, over the bound {comp_bound}",
                comp[0],
                comp.len()
            )));
        }
        vertices.extend(component_mis(g, &comp));
    }
    let vertices = VertexSet::from_unsorted(vertices);
    Ok(IndependentSetResult {
        size: vertices.len(),
        vertices,
        support_index: None,
    })
}

/// Independent set of size at least `(1 - eps) * alpha(G)`: solve each
/// residual `G - X_i` exactly and keep the largest answer (ties to the
/// lowest support index). Requires `thickness(pi) <= eps` and a valid
/// complementary packing whose bound fits the exact solver.
pub fn ptas_independent_set(
    g: &Graph,
    eps: Rational64,
    pi: &FractionalPacking,
    w: WitnessClassSpec,
) -> Result<IndependentSetResult> {
    let eps_big = BigRational::new(BigInt::from(*eps.numer()), BigInt::from(*eps.denom()));
    let thick = thickness(g, pi)?;
    if thick > eps_big {
        return Err(Error::InvalidArgument(alloc::format!(
            "packing thickness {thick} exceeds eps {eps}"
        )));
    }
    let check = validate_complementary(g, pi, w)?;
    if !check.holds {
        return Err(Error::InvalidArgument(alloc::format!(
            "packing is not complementary for component bound {}",
            w.bound
        )));
    }
    let mut best: Option<IndependentSetResult> = None;
    for (i, (x, _)) in pi.entries().iter().enumerate() {
        let alive = x.complement(g.n());
        let (sub, map) = induced_subgraph(g, &alive)?;
        let local = exact_max_independent_set(&sub, w.bound)?;
        let translated: VertexSet = local.vertices.iter().map(|v| map[v]).collect();
        if best.as_ref().is_none_or(|b| translated.len() > b.size) {
            best = Some(IndependentSetResult {
                size: translated.len(),
                vertices: translated,
                support_index: Some(i),
            });
        }
    }
    best.ok_or_else(|| {
        Error::InvalidArgument(alloc::string::String::from("packing has empty support"))
    })
}

/// Exact subgraph-isomorphism backtracking (not induced): map the
/// pattern's vertices, component by component in BFS order, with
/// degree-based pruning. Handles disconnected patterns with one global
/// used-set.
fn contains_subgraph(g: &Graph, h: &Graph) -> bool {
    if h.n() == 0 {
        return true;
    }
    if h.n() > g.n() || h.m() > g.m() || h.max_degree() > g.max_degree() {
        return false;
    }
    // Order: components largest first, BFS from a max-degree vertex.
    let mut comps = h.components();
    comps.sort_by_key(|c| core::cmp::Reverse(c.len()));
    let mut order = Vec::with_capacity(h.n());
    for comp in &comps {
        let start = *comp
            .iter()
            .max_by_key(|&&v| (h.degree(v), core::cmp::Reverse(v)))
            .expect("nonempty component");
        let mut seen: Vec<usize> = alloc::vec![start];
        let mut queue = alloc::vec![start];
        while let Some(v) = queue.pop() {
            for &u in h.neighbors(v) {
                if !seen.contains(&u) {
                    seen.push(u);
                    queue.push(u);
                }
            }
        }
        order.extend(seen);
    }

    fn recurse(
        g: &Graph,
        h: &Graph,
        order: &[usize],
        pos: usize,
        assign: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let hv = order[pos];
        let mapped_neighbors: Vec<usize> = h
            .neighbors(hv)
            .iter()
            .filter(|&&u| assign[u] != usize::MAX)
            .map(|&u| assign[u])
            .collect();
        let try_vertex = |gv: usize, assign: &mut [usize], used: &mut [bool]| -> bool {
            if used[gv] || g.degree(gv) < h.degree(hv) {
                return false;
            }
            if !mapped_neighbors.iter().all(|&mn| g.has_edge(gv, mn)) {
                return false;
            }
            assign[hv] = gv;
            used[gv] = true;
            let ok = recurse(g, h, order, pos + 1, assign, used);
            if !ok {
                assign[hv] = usize::MAX;
                used[gv] = false;
            }
            ok
        };
        if let Some(&anchor) = mapped_neighbors.first() {
            for &gv in g.neighbors(anchor) {
                if try_vertex(gv, assign, used) {
                    return true;
                }
            }
        } else {
            for gv in 0..g.n() {
                if try_vertex(gv, assign, used) {
                    return true;
                }
            }
        }
        false
    }

    let mut assign = alloc::vec![usize::MAX; h.n()];
    let mut used = alloc::vec![false; g.n()];
    recurse(g, h, &order, 0, &mut assign, &mut used)
}

/// Is `h` a subgraph of `g`? Tests `h` against each residual `G - X_i`
/// exactly; a packing of thickness at most `1/(|V(H)|+1)` guarantees
/// some support set misses any fixed copy of `h`, so a miss on every
/// residual is a definite no.
pub fn subgraph_test(
    g: &Graph,
    h: &Graph,
    pi: &FractionalPacking,
    w: WitnessClassSpec,
) -> Result<bool> {
    if h.n() == 0 {
        return Ok(true);
    }
    let threshold = BigRational::new(BigInt::from(1), BigInt::from(h.n() as i64 + 1));
    let thick = thickness(g, pi)?;
    if thick > threshold {
        return Err(Error::ThicknessTooLarge(alloc::format!(
            "thickness {thick} exceeds 1/(|V(H)|+1) = {threshold}; a negative answer would be unsound"
        )));
    }
    let check = validate_complementary(g, pi, w)?;
    if !check.holds {
        return Err(Error::InvalidArgument(alloc::format!(
            "packing is not complementary for component bound {}",
            w.bound
        )));
    }
    for (x, _) in pi.entries() {
        let alive = x.complement(g.n());
        let (sub, _) = induced_subgraph(g, &alive)?;
        if let Some(c) = sub
            .components()
            .iter()
            .find(|c| c.len() > MAX_ISO_COMPONENT)
        {
            return Err(Error::TooLarge(alloc::format!(
                "residual component of {} vertices exceeds the isomorphism range {MAX_ISO_COMPONENT}",
                c.len()
            )));
        }
        if contains_subgraph(&sub, h) {
            return Ok(true);
        }
    }
    Ok(false)
}
