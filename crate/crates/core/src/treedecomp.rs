//! Rooted binary-branching tree decompositions with bounded vertex reuse
//! across levels, built by recursive X-balanced separation.

use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{induced_subgraph, Graph, VertexSet};
use crate::separators::x_balanced_separator;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompNode {
    pub parent: Option<usize>,
    pub bag: VertexSet,
}

/// Rooted tree decomposition; node ids index `nodes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub nodes: Vec<DecompNode>,
    pub root: usize,
}

impl TreeDecomposition {
    /// One bag holding the whole vertex set.
    pub fn single_bag(bag: VertexSet) -> Self {
        TreeDecomposition {
            nodes: alloc::vec![DecompNode { parent: None, bag }],
            root: 0,
        }
    }

    pub fn children_lists(&self) -> Vec<Vec<usize>> {
        let mut children = alloc::vec![Vec::new(); self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                children[p].push(i);
            }
        }
        children
    }

    /// Node depths from the root, or `None` when the parent pointers do
    /// not form a tree rooted at `root`.
    pub fn depths(&self) -> Option<Vec<usize>> {
        if self.nodes.is_empty() {
            return Some(Vec::new());
        }
        if self.root >= self.nodes.len() || self.nodes[self.root].parent.is_some() {
            return None;
        }
        let children = self.children_lists();
        let mut depth = alloc::vec![usize::MAX; self.nodes.len()];
        depth[self.root] = 0;
        let mut stack = alloc::vec![self.root];
        let mut seen = 1;
        while let Some(v) = stack.pop() {
            for &c in &children[v] {
                if depth[c] != usize::MAX {
                    return None;
                }
                depth[c] = depth[v] + 1;
                seen += 1;
                stack.push(c);
            }
        }
        if seen != self.nodes.len() {
            return None;
        }
        Some(depth)
    }

    pub fn max_bag_size(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0)
    }

    /// Maximum bag size minus one (`-1` for a bagless or all-empty
    /// decomposition).
    pub fn width(&self) -> i64 {
        self.max_bag_size() as i64 - 1
    }
}

/// Result of checking the decomposition axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub width: i64,
    pub max_vertex_level_span: usize,
    pub violations: Vec<String>,
}

/// Check the three decomposition axioms plus the binary-branching shape;
/// violations are reported, never thrown. The level span of a vertex is
/// the number of distinct tree depths among the nodes containing it.
pub fn validate_decomposition(g: &Graph, t: &TreeDecomposition) -> ValidationReport {
    let mut violations = Vec::new();
    let width = t.width();

    let Some(depths) = t.depths() else {
        violations.push(String::from("node parents do not form a tree at the root"));
        return ValidationReport {
            width,
            max_vertex_level_span: 0,
            violations,
        };
    };

    let children = t.children_lists();
    for (i, ch) in children.iter().enumerate() {
        if ch.len() > 2 {
            violations.push(alloc::format!("node {i} has {} children", ch.len()));
        }
    }
    for node in &t.nodes {
        if node.bag.validate_for(g).is_err() {
            violations.push(String::from("bag contains vertex outside the graph"));
        }
    }

    // Vertex coverage and per-vertex node lists.
    let mut holding: Vec<Vec<usize>> = alloc::vec![Vec::new(); g.n()];
    for (i, node) in t.nodes.iter().enumerate() {
        for v in node.bag.iter() {
            if v < g.n() {
                holding[v].push(i);
            }
        }
    }
    for v in 0..g.n() {
        if holding[v].is_empty() {
            violations.push(alloc::format!("vertex {v} not covered by any bag"));
        }
    }

    // Edge coverage.
    for (u, v) in g.edges() {
        let covered = holding[u]
            .iter()
            .any(|&i| t.nodes[i].bag.contains(v));
        if !covered {
            violations.push(alloc::format!("edge ({u}, {v}) not covered by any bag"));
        }
    }

    // Connected-subtree axiom: within the nodes holding v, exactly one
    // has its parent outside the set.
    for v in 0..g.n() {
        if holding[v].len() <= 1 {
            continue;
        }
        let in_set = |i: usize| holding[v].binary_search(&i).is_ok();
        let tops = holding[v]
            .iter()
            .filter(|&&i| t.nodes[i].parent.is_none_or(|p| !in_set(p)))
            .count();
        if tops != 1 {
            violations.push(alloc::format!(
                "vertex {v} induces a disconnected set of {tops} subtrees"
            ));
        }
    }

    let max_vertex_level_span = (0..g.n())
        .map(|v| {
            let mut levels: Vec<usize> = holding[v].iter().map(|&i| depths[i]).collect();
            levels.sort_unstable();
            levels.dedup();
            levels.len()
        })
        .max()
        .unwrap_or(0);

    ValidationReport {
        width,
        max_vertex_level_span,
        violations,
    }
}

/// Treewidth budget implied by a separator profile `s(n) <= c * n^psi`
/// for subgraph-closed inputs: `floor(105 * c * n^psi)`.
pub fn treewidth_budget_from_profile(c: f64, psi: f64, n: usize) -> Result<usize> {
    if !(c >= 0.0) || !(0.0..1.0).contains(&psi) {
        return Err(Error::InvalidArgument(alloc::format!(
            "need c >= 0 and 0 <= psi < 1, got c={c}, psi={psi}"
        )));
    }
    Ok(crate::mathx::floor(105.0 * c * crate::mathx::powf(n as f64, psi)) as usize)
}

struct Builder<'a> {
    g: &'a Graph,
    tw_budget: usize,
    b: usize,
    w: usize,
    nodes: Vec<DecompNode>,
}

impl Builder<'_> {
    /// Decompose the subgraph induced by `h` (sorted host labels) with
    /// root set `z` (subset of `h`); returns the subtree root and
    /// guarantees its bag contains `z`.
    fn run(&mut self, h: Vec<usize>, z: Vec<usize>) -> Result<usize> {
        debug_assert!(z.iter().all(|v| h.binary_search(v).is_ok()));
        if h.len() <= self.w + self.b {
            return Ok(self.push(VertexSet::from_unsorted(h), None));
        }
        if z.len() <= self.b {
            // Extend the root set to size b with the lowest-numbered
            // vertices outside it, peel it off, and recurse on the rest
            // with its external neighborhood as the new root set.
            let target = self.b.min(h.len());
            let z_set = VertexSet::from_unsorted(z);
            let mut zp: Vec<usize> = z_set.iter().collect();
            for &v in &h {
                if zp.len() >= target {
                    break;
                }
                if !z_set.contains(v) {
                    zp.push(v);
                }
            }
            let zp = VertexSet::from_unsorted(zp);
            let h_set = VertexSet::from_unsorted(h);
            let rest = h_set.difference(&zp);
            let zpp: VertexSet = rest
                .iter()
                .filter(|&v| self.g.neighbors(v).iter().any(|&u| zp.contains(u)))
                .collect();
            if rest.is_empty() {
                return Ok(self.push(zp, None));
            }
            let child = self.run(rest.iter().collect(), zpp.iter().collect())?;
            let node = self.push(zp.union(&zpp), None);
            self.nodes[child].parent = Some(node);
            return Ok(node);
        }
        // Root set too large: split it with an X-balanced separator and
        // hand each side its share. Only reachable with |Z| > b.
        debug_assert!(z.len() > self.b);
        let h_set = VertexSet::from_unsorted(h);
        let (sub, map) = induced_subgraph(self.g, &h_set)?;
        let mut back = alloc::vec![usize::MAX; self.g.n()];
        for (local, &host) in map.iter().enumerate() {
            back[host] = local;
        }
        let x_local: VertexSet = z.iter().map(|&v| back[v]).collect();
        let sep = x_balanced_separator(&sub, &x_local, self.tw_budget + 1).map_err(|e| {
            match e {
                Error::BudgetExceeded { best, context } => Error::BudgetExceeded {
                    best,
                    context: alloc::format!(
                        "{context} while decomposing a {}-vertex subgraph with |Z|={}",
                        map.len(),
                        z.len()
                    ),
                },
                other => other,
            }
        })?;
        let to_host = |s: &VertexSet| -> VertexSet { s.iter().map(|v| map[v]).collect() };
        let va = to_host(&sep.side_a);
        let vb = to_host(&sep.side_b);
        let s = to_host(&sep.separator());
        let z_set = VertexSet::from_unsorted(z);
        let za = s.union(&z_set.difference(&vb));
        let zb = s.union(&z_set.difference(&va));
        if za.len() >= z_set.len() || zb.len() >= z_set.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "x-balanced separator made no progress on a root set of {}",
                z_set.len()
            )));
        }
        let ca = self.run(va.iter().collect(), za.iter().collect())?;
        let cb = self.run(vb.iter().collect(), zb.iter().collect())?;
        let node = self.push(z_set.union(&s), None);
        self.nodes[ca].parent = Some(node);
        self.nodes[cb].parent = Some(node);
        Ok(node)
    }

    fn push(&mut self, bag: VertexSet, parent: Option<usize>) -> usize {
        self.nodes.push(DecompNode { parent, bag });
        self.nodes.len() - 1
    }
}

/// Build a rooted tree decomposition with at most two children per node
/// and bags of size at most `12*(tw_budget+1)*(delta+1)`, where `delta`
/// bounds the maximum degree and `tw_budget` the treewidth of `g`.
///
/// The recursion peels off fixed-size root sets while they stay small
/// (at most `b = 12*(tw_budget+1)`) and splits oversized root sets with
/// an X-balanced separator of size at most `tw_budget + 1`; separator
/// failures propagate with the recursion context attached.
pub fn build_bounded_reuse_decomposition(
    g: &Graph,
    delta: usize,
    tw_budget: usize,
) -> Result<TreeDecomposition> {
    if g.max_degree() > delta {
        return Err(Error::InvalidArgument(alloc::format!(
            "maximum degree {} exceeds the stated bound {delta}",
            g.max_degree()
        )));
    }
    let b = 12 * (tw_budget + 1);
    let mut builder = Builder {
        g,
        tw_budget,
        b,
        w: delta * b,
        nodes: Vec::new(),
    };
    let root = builder.run((0..g.n()).collect(), Vec::new())?;
    Ok(TreeDecomposition {
        nodes: builder.nodes,
        root,
    })
}
