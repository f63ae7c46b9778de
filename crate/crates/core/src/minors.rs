//! Shallow-minor machinery: verifiable certificates (vertex-disjoint
//! rooted branch trees of bounded depth plus witness edges), certificate
//! composition, exact and greedy density measurement over k-minors, the
//! once-subdivided-clique search, and the densify-or-clique pipeline
//! that extracts shallow clique minors from dense graphs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::Rational64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::mathx;
use crate::{Error, Result};

/// Proof that a model graph `H` is a `depth`-minor of a host graph:
/// one rooted tree per model vertex (vertex-disjoint in the host, each
/// of depth at most `depth`), plus one host edge per model edge joining
/// the two corresponding trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorCertificate {
    pub depth: usize,
    pub trees: Vec<BranchTree>,
    /// Keyed by model edge `(i, j)` with `i < j`; the value `(u, v)` is a
    /// host edge with `u` in tree `i` and `v` in tree `j`.
    pub witness_edges: BTreeMap<(usize, usize), (usize, usize)>,
}

/// Rooted tree in the host graph: `(vertex, parent)` pairs, root first
/// with no parent, every parent listed before its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchTree {
    pub model_vertex: usize,
    pub nodes: Vec<(usize, Option<usize>)>,
}

impl BranchTree {
    pub fn singleton(model_vertex: usize, host_vertex: usize) -> Self {
        BranchTree {
            model_vertex,
            nodes: alloc::vec![(host_vertex, None)],
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().map(|&(v, _)| v)
    }

    /// Edge-depth of the tree; `None` if the parent structure is broken.
    pub fn depth(&self) -> Option<usize> {
        let mut depth_of: BTreeMap<usize, usize> = BTreeMap::new();
        let mut max = 0;
        for (i, &(v, parent)) in self.nodes.iter().enumerate() {
            let d = match parent {
                None if i == 0 => 0,
                None => return None,
                Some(p) => depth_of.get(&p).copied()? + 1,
            };
            depth_of.insert(v, d);
            max = max.max(d);
        }
        Some(max)
    }
}

impl MinorCertificate {
    /// The certificate showing `g` is a 0-minor of itself.
    pub fn identity(g: &Graph) -> Self {
        MinorCertificate {
            depth: 0,
            trees: (0..g.n()).map(|v| BranchTree::singleton(v, v)).collect(),
            witness_edges: g.edges().map(|(u, v)| ((u, v), (u, v))).collect(),
        }
    }

    /// Canonical certificate of a single-vertex model.
    pub fn single_vertex(host_vertex: usize) -> Self {
        MinorCertificate {
            depth: 0,
            trees: alloc::vec![BranchTree::singleton(0, host_vertex)],
            witness_edges: BTreeMap::new(),
        }
    }

    /// Canonical certificate of the empty model.
    pub fn empty() -> Self {
        MinorCertificate {
            depth: 0,
            trees: Vec::new(),
            witness_edges: BTreeMap::new(),
        }
    }

    /// Reconstruct the model graph: one vertex per tree, edges from the
    /// witness keys.
    pub fn model(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.witness_edges.keys().copied().collect();
        Graph::from_edges(self.trees.len(), &edges)
    }

    /// Maximum actual tree depth (0 for an empty certificate).
    pub fn measured_depth(&self) -> usize {
        self.trees
            .iter()
            .filter_map(BranchTree::depth)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

/// Check a certificate against the host `g` and the model `h`.
pub fn verify_certificate(g: &Graph, h: &Graph, cert: &MinorCertificate) -> CertificateReport {
    let mut violations = Vec::new();
    if cert.trees.len() != h.n() {
        violations.push(alloc::format!(
            "certificate has {} trees for a {}-vertex model",
            cert.trees.len(),
            h.n()
        ));
    }
    let mut seen_models = BTreeSet::new();
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for tree in &cert.trees {
        if tree.model_vertex >= h.n() || !seen_models.insert(tree.model_vertex) {
            violations.push(alloc::format!(
                "model vertex {} missing or duplicated",
                tree.model_vertex
            ));
            continue;
        }
        if tree.nodes.is_empty() {
            violations.push(alloc::format!("tree {} is empty", tree.model_vertex));
            continue;
        }
        let mut members = BTreeSet::new();
        for (i, &(v, parent)) in tree.nodes.iter().enumerate() {
            if v >= g.n() {
                violations.push(alloc::format!("tree vertex {v} outside the host graph"));
                continue;
            }
            if !members.insert(v) {
                violations.push(alloc::format!(
                    "vertex {v} repeated inside tree {}",
                    tree.model_vertex
                ));
            }
            match parent {
                None => {
                    if i != 0 {
                        violations.push(alloc::format!(
                            "tree {} has a non-root node without parent",
                            tree.model_vertex
                        ));
                    }
                }
                Some(p) => {
                    if !members.contains(&p) {
                        violations.push(alloc::format!(
                            "parent {p} not listed before vertex {v} in tree {}",
                            tree.model_vertex
                        ));
                    } else if !g.has_edge(v, p) {
                        violations.push(alloc::format!(
                            "tree edge ({v}, {p}) is not a host edge"
                        ));
                    }
                }
            }
            match owner.insert(v, tree.model_vertex) {
                Some(other) if other != tree.model_vertex => {
                    violations.push(alloc::format!(
                        "trees {other} and {} are not disjoint: both contain {v}",
                        tree.model_vertex
                    ));
                }
                _ => {}
            }
        }
        match tree.depth() {
            Some(d) if d > cert.depth => violations.push(alloc::format!(
                "tree {} has depth {d}, over the stated {}",
                tree.model_vertex,
                cert.depth
            )),
            Some(_) => {}
            None => violations.push(alloc::format!(
                "tree {} has a broken parent structure",
                tree.model_vertex
            )),
        }
    }
    let tree_vertices = |model: usize| -> Option<&BranchTree> {
        cert.trees.iter().find(|t| t.model_vertex == model)
    };
    for (i, j) in h.edges() {
        match cert.witness_edges.get(&(i, j)) {
            None => violations.push(alloc::format!("model edge ({i}, {j}) has no witness")),
            Some(&(u, v)) => {
                if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                    violations.push(alloc::format!(
                        "witness ({u}, {v}) for model edge ({i}, {j}) is not a host edge"
                    ));
                } else {
                    let u_ok = tree_vertices(i).is_some_and(|t| t.vertices().any(|x| x == u));
                    let v_ok = tree_vertices(j).is_some_and(|t| t.vertices().any(|x| x == v));
                    if !u_ok || !v_ok {
                        violations.push(alloc::format!(
                            "witness ({u}, {v}) does not join trees {i} and {j}"
                        ));
                    }
                }
            }
        }
    }
    for &(i, j) in cert.witness_edges.keys() {
        if i >= j || j >= h.n() || !h.has_edge(i, j) {
            violations.push(alloc::format!(
                "witness recorded for ({i}, {j}), which is not a model edge"
            ));
        }
    }
    CertificateReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// Deterministic BFS tree over an explicit edge list, neighbors visited
/// in sorted order.
fn bfs_tree(vertices: &BTreeSet<usize>, edges: &BTreeSet<(usize, usize)>, root: usize) -> Vec<(usize, Option<usize>)> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in vertices {
        adj.insert(v, Vec::new());
    }
    for &(u, v) in edges {
        adj.get_mut(&u).expect("edge endpoint listed").push(v);
        adj.get_mut(&v).expect("edge endpoint listed").push(u);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let mut nodes = alloc::vec![(root, None)];
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    seen.insert(root);
    let mut frontier = alloc::vec![root];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            for &u in &adj[&v] {
                if seen.insert(u) {
                    nodes.push((u, Some(v)));
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    debug_assert_eq!(nodes.len(), vertices.len(), "branch-tree union is connected");
    nodes
}

/// Compose: `outer` certifies `H'` as a `d1`-minor of `g`, `inner`
/// certifies `H` as a `d2`-minor of `H'`; the result certifies `H` as a
/// minor of `g` at depth at most `d1 + d2*(2*d1 + 1)`. Each composed
/// branch tree is the union of the outer trees of one inner tree,
/// stitched along witness edges and re-rooted by BFS, so the recorded
/// depth is the measured one (never above the bound).
pub fn compose_certificates(
    g: &Graph,
    outer: &MinorCertificate,
    inner: &MinorCertificate,
) -> Result<MinorCertificate> {
    let h_prime = outer.model()?;
    let outer_report = verify_certificate(g, &h_prime, outer);
    if !outer_report.valid {
        return Err(Error::InvalidArgument(alloc::format!(
            "outer certificate invalid: {}",
            outer_report.violations[0]
        )));
    }
    let h = inner.model()?;
    let inner_report = verify_certificate(&h_prime, &h, inner);
    if !inner_report.valid {
        return Err(Error::InvalidArgument(alloc::format!(
            "inner certificate invalid: {}",
            inner_report.violations[0]
        )));
    }
    let outer_tree = |model: usize| -> &BranchTree {
        outer
            .trees
            .iter()
            .find(|t| t.model_vertex == model)
            .expect("verified certificate covers every model vertex")
    };

    let mut trees = Vec::with_capacity(inner.trees.len());
    for itree in &inner.trees {
        let mut vertices: BTreeSet<usize> = BTreeSet::new();
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(a, _) in &itree.nodes {
            let ot = outer_tree(a);
            vertices.extend(ot.vertices());
            for &(v, parent) in &ot.nodes {
                if let Some(p) = parent {
                    edges.insert((v.min(p), v.max(p)));
                }
            }
        }
        for &(a, parent) in &itree.nodes {
            if let Some(p) = parent {
                let key = (a.min(p), a.max(p));
                let &(u, v) = outer
                    .witness_edges
                    .get(&key)
                    .expect("verified inner tree edges have outer witnesses");
                edges.insert((u.min(v), u.max(v)));
            }
        }
        let root = outer_tree(itree.nodes[0].0).nodes[0].0;
        trees.push(BranchTree {
            model_vertex: itree.model_vertex,
            nodes: bfs_tree(&vertices, &edges, root),
        });
    }

    let mut witness_edges = BTreeMap::new();
    for (&(i, j), &(a, b)) in &inner.witness_edges {
        // (a, b) is an H'-edge with a in inner tree i, b in inner tree j;
        // its outer witness joins the corresponding composed trees.
        let key = (a.min(b), a.max(b));
        let &(u, v) = outer
            .witness_edges
            .get(&key)
            .expect("verified inner witnesses are H' edges");
        let oriented = if a <= b { (u, v) } else { (v, u) };
        witness_edges.insert((i, j), oriented);
    }

    let mut composed = MinorCertificate {
        depth: 0,
        trees,
        witness_edges,
    };
    composed.depth = composed.measured_depth();
    Ok(composed)
}

/// Density report for the best minor found at depth `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub density: Rational64,
    pub certificate: MinorCertificate,
}

const MAX_NABLA_BRUTE_VERTICES: usize = 10;

/// Branch-set partition candidate: connected and of radius at most `k`
/// inside the part (some center reaches every part vertex within `k`).
fn part_is_valid(adj: &[u64], part: u64, k: usize) -> bool {
    let mut m = part;
    while m != 0 {
        let c = m.trailing_zeros() as usize;
        m &= m - 1;
        // BFS inside the part from candidate center c.
        let mut reached = 1u64 << c;
        for _ in 0..k {
            let mut grow = 0u64;
            let mut f = reached;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                grow |= adj[v] & part;
            }
            reached |= grow;
        }
        if reached == part {
            return true;
        }
    }
    false
}

/// Smallest vertex of a part from which BFS covers the whole part
/// within `k` steps. Works on explicit adjacency, so parts may live in
/// arbitrarily large host graphs.
fn center_within(
    vertices: &BTreeSet<usize>,
    edges: &BTreeSet<(usize, usize)>,
    k: usize,
) -> Option<usize> {
    let mut adj: BTreeMap<usize, Vec<usize>> =
        vertices.iter().map(|&v| (v, Vec::new())).collect();
    for &(u, v) in edges {
        adj.get_mut(&u).expect("edge endpoint listed").push(v);
        adj.get_mut(&v).expect("edge endpoint listed").push(u);
    }
    for &c in vertices {
        let mut reached: BTreeSet<usize> = BTreeSet::new();
        reached.insert(c);
        let mut frontier = alloc::vec![c];
        for _ in 0..k {
            let mut next = Vec::new();
            for &x in &frontier {
                for &u in &adj[&x] {
                    if reached.insert(u) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        if reached.len() == vertices.len() {
            return Some(c);
        }
    }
    None
}

/// Densest subgraph of a small graph by subset enumeration: returns the
/// best (vertex mask, edge count), preferring earlier masks on ties.
fn densest_subset(adj: &[u64], n: usize) -> (u64, usize) {
    let mut best_mask = 0u64;
    let mut best_num = 0u64; // edges
    let mut best_den = 1u64; // vertices
    let limit: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut s = 1u64;
    while s <= limit {
        let verts = s.count_ones() as u64;
        let mut edges = 0u64;
        let mut f = s;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            edges += (adj[v] & s).count_ones() as u64;
        }
        edges /= 2;
        if best_mask == 0 || edges * best_den > best_num * verts {
            best_mask = s;
            best_num = edges;
            best_den = verts;
        }
        if s == limit {
            break;
        }
        s += 1;
    }
    (best_mask, best_num as usize)
}

/// Build the certificate for a family of chosen parts (each connected,
/// radius <= k): model vertices follow the order of `parts`; witness
/// edges are the lexicographically smallest host edges between parts.
fn certificate_from_parts(g: &Graph, parts: &[Vec<usize>], k: usize) -> (Graph, MinorCertificate) {
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            owner.insert(v, i);
        }
    }
    let mut model_edges: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (u, v) in g.edges() {
        if let (Some(&a), Some(&b)) = (owner.get(&u), owner.get(&v)) {
            if a != b {
                let key = (a.min(b), a.max(b));
                let witness = if a < b { (u, v) } else { (v, u) };
                model_edges.entry(key).or_insert(witness);
            }
        }
    }
    let mut trees = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        // Local adjacency restricted to the part, for the BFS tree.
        let vertices: BTreeSet<usize> = part.iter().copied().collect();
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &u in part {
            for &v in g.neighbors(u) {
                if vertices.contains(&v) {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
        }
        // Root at a radius witness so BFS depth stays within k.
        let root = center_within(&vertices, &edges, k).unwrap_or(part[0]);
        trees.push(BranchTree {
            model_vertex: i,
            nodes: bfs_tree(&vertices, &edges, root),
        });
    }
    let model = Graph::from_edges(
        parts.len(),
        &model_edges.keys().copied().collect::<Vec<_>>(),
    )
    .expect("model edges are valid");
    let mut cert = MinorCertificate {
        depth: 0,
        trees,
        witness_edges: model_edges,
    };
    cert.depth = cert.measured_depth();
    (model, cert)
}

fn report_from_parts(g: &Graph, parts: &[Vec<usize>], k: usize) -> DensityReport {
    let (model, certificate) = certificate_from_parts(g, parts, k);
    DensityReport {
        k,
        vertices: model.n(),
        edges: model.m(),
        density: if model.n() == 0 {
            Rational64::new(0, 1)
        } else {
            Rational64::new(model.m() as i64, model.n() as i64)
        },
        certificate,
    }
}

/// Exact maximum density over all `k`-minors of a graph on at most 10
/// vertices: enumerate partitions of the vertex set into connected parts
/// of radius at most `k`, then take the densest submodel (deleting model
/// vertices never improves on the best subset, so partitions plus subset
/// search cover all minors).
pub fn nabla_brute(g: &Graph, k: usize) -> Result<DensityReport> {
    if g.n() > MAX_NABLA_BRUTE_VERTICES {
        return Err(Error::TooLarge(alloc::format!(
            "exact density search limited to {MAX_NABLA_BRUTE_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    let n = g.n();
    if n == 0 {
        return Ok(report_from_parts(g, &[], k));
    }
    let mut adj = alloc::vec![0u64; n];
    for v in 0..n {
        for &u in g.neighbors(v) {
            adj[v] |= 1 << u;
        }
    }
    let full: u64 = (1 << n) - 1;

    // Fast path: depth 0 means subgraphs only.
    if k == 0 {
        let (mask, _) = densest_subset(&adj, n);
        let parts: Vec<Vec<usize>> = crate::bitset::mask_to_vec(mask)
            .into_iter()
            .map(|v| alloc::vec![v])
            .collect();
        return Ok(report_from_parts(g, &parts, 0));
    }

    let mut part_cache: BTreeMap<u64, bool> = BTreeMap::new();
    let mut best: Option<(Rational64, Vec<u64>, u64)> = None; // density, partition, chosen submask

    fn recurse(
        adj: &[u64],
        k: usize,
        remaining: u64,
        parts: &mut Vec<u64>,
        cache: &mut BTreeMap<u64, bool>,
        best: &mut Option<(Rational64, Vec<u64>, u64)>,
    ) {
        if remaining == 0 {
            // Model adjacency between parts.
            let h = parts.len();
            let mut model_adj = alloc::vec![0u64; h];
            for i in 0..h {
                for j in (i + 1)..h {
                    let mut joined = false;
                    let mut f = parts[i];
                    while f != 0 && !joined {
                        let v = f.trailing_zeros() as usize;
                        f &= f - 1;
                        joined = adj[v] & parts[j] != 0;
                    }
                    if joined {
                        model_adj[i] |= 1 << j;
                        model_adj[j] |= 1 << i;
                    }
                }
            }
            let (mask, edges) = densest_subset(&model_adj, h);
            let density = Rational64::new(edges as i64, mask.count_ones() as i64);
            if best.as_ref().is_none_or(|(d, _, _)| density > *d) {
                *best = Some((density, parts.clone(), mask));
            }
            return;
        }
        let seed = remaining.trailing_zeros() as usize;
        // All subsets of `remaining` that contain the seed vertex.
        let rest = remaining & !(1 << seed);
        let mut sub = rest;
        loop {
            let part = sub | (1 << seed);
            let valid = *cache
                .entry(part)
                .or_insert_with(|| part_is_valid(adj, part, k));
            if valid {
                parts.push(part);
                recurse(adj, k, remaining & !part, parts, cache, best);
                parts.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }

    recurse(&adj, k, full, &mut Vec::new(), &mut part_cache, &mut best);
    let (_, partition, chosen) = best.expect("singleton partition always valid");
    let parts: Vec<Vec<usize>> = partition
        .iter()
        .enumerate()
        .filter(|(i, _)| chosen >> i & 1 == 1)
        .map(|(_, &mask)| crate::bitset::mask_to_vec(mask))
        .collect();
    Ok(report_from_parts(g, &parts, k))
}

/// Min-degree peeling: the densest suffix of the peel order, restricted
/// to the given model. Returns indices of the kept model vertices.
fn peel_densest(model: &Graph) -> Vec<usize> {
    let n = model.n();
    let mut alive = alloc::vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| model.degree(v)).collect();
    let mut edges = model.m();
    let mut verts = n;
    let mut best_density = if n == 0 {
        Rational64::new(0, 1)
    } else {
        Rational64::new(edges as i64, verts as i64)
    };
    let mut removal_order = Vec::new();
    let mut best_removed = 0usize;
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        alive[v] = false;
        removal_order.push(v);
        edges -= degree[v];
        verts -= 1;
        for &u in model.neighbors(v) {
            if alive[u] {
                degree[u] -= 1;
            }
        }
        if verts > 0 {
            let d = Rational64::new(edges as i64, verts as i64);
            if d > best_density {
                best_density = d;
                best_removed = step + 1;
            }
        }
    }
    let removed: BTreeSet<usize> = removal_order[..best_removed].iter().copied().collect();
    (0..n).filter(|v| !removed.contains(v)).collect()
}

fn greedy_candidate_parts(g: &Graph, radius: usize) -> Vec<Vec<usize>> {
    let mut unused: BTreeSet<usize> = (0..g.n()).collect();
    let mut parts = Vec::new();
    while !unused.is_empty() {
        let &v = unused
            .iter()
            .max_by_key(|&&v| {
                let deg = g.neighbors(v).iter().filter(|u| unused.contains(u)).count();
                (deg, core::cmp::Reverse(v))
            })
            .expect("nonempty");
        // BFS ball of the given radius inside the unused vertices.
        let mut ball: BTreeSet<usize> = BTreeSet::new();
        ball.insert(v);
        let mut frontier = alloc::vec![v];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &x in &frontier {
                for &u in g.neighbors(x) {
                    if unused.contains(&u) && ball.insert(u) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        for &u in &ball {
            unused.remove(&u);
        }
        parts.push(ball.into_iter().collect::<Vec<usize>>());
    }
    parts
}

fn matching_candidate_parts(g: &Graph) -> Vec<Vec<usize>> {
    let mut unused: BTreeSet<usize> = (0..g.n()).collect();
    let mut parts = Vec::new();
    for v in 0..g.n() {
        if !unused.contains(&v) {
            continue;
        }
        let mate = g.neighbors(v).iter().copied().find(|u| unused.contains(u));
        match mate {
            Some(u) => {
                unused.remove(&v);
                unused.remove(&u);
                parts.push(alloc::vec![v.min(u), v.max(u)]);
            }
            None => {
                unused.remove(&v);
                parts.push(alloc::vec![v]);
            }
        }
    }
    parts
}

/// Certified lower bound on the depth-`k` minor density: try several
/// greedy contraction profiles (no contraction, BFS balls of each radius
/// up to `k`, a maximal matching), peel each resulting model to its
/// densest suffix, and keep the best.
pub fn nabla_greedy(g: &Graph, k: usize) -> DensityReport {
    let mut candidates: Vec<Vec<Vec<usize>>> =
        alloc::vec![(0..g.n()).map(|v| alloc::vec![v]).collect()];
    for r in 1..=k {
        candidates.push(greedy_candidate_parts(g, r));
    }
    if k >= 1 {
        candidates.push(matching_candidate_parts(g));
    }
    let mut best: Option<DensityReport> = None;
    for parts in candidates {
        let (model, _) = certificate_from_parts(g, &parts, k);
        let keep = peel_densest(&model);
        let chosen: Vec<Vec<usize>> = keep.iter().map(|&i| parts[i].clone()).collect();
        let report = report_from_parts(g, &chosen, k);
        if best.as_ref().is_none_or(|b| report.density > b.density) {
            best = Some(report);
        }
    }
    best.expect("at least the singleton profile exists")
}

/// Search result of [`find_k1t`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum K1tOutcome {
    /// Depth-1 certificate of `K_t` (each subdivision vertex contracted
    /// into its lower-indexed branch endpoint).
    Found(MinorCertificate),
    /// Exhaustive search proved absence.
    NotFound,
    /// Node budget ran out before the search finished.
    BudgetExhausted,
}

/// Bipartite matching: assign to each pair a distinct vertex from its
/// candidate list (Kuhn's augmenting paths).
fn distinct_representatives(cands: &[Vec<usize>], n: usize) -> Option<Vec<usize>> {
    let mut owner = alloc::vec![usize::MAX; n];
    fn augment(
        pair: usize,
        cands: &[Vec<usize>],
        owner: &mut [usize],
        visited: &mut [bool],
    ) -> bool {
        for &v in &cands[pair] {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            if owner[v] == usize::MAX || augment(owner[v], cands, owner, visited) {
                owner[v] = pair;
                return true;
            }
        }
        false
    }
    for pair in 0..cands.len() {
        let mut visited = alloc::vec![false; n];
        if !augment(pair, cands, &mut owner, &mut visited) {
            return None;
        }
    }
    let mut assign = alloc::vec![usize::MAX; cands.len()];
    for (v, &p) in owner.iter().enumerate() {
        if p != usize::MAX {
            assign[p] = v;
        }
    }
    Some(assign)
}

/// Find the once-subdivided clique on `t` branch vertices as a subgraph
/// and return it as a depth-1 certificate of `K_t`. Exact for `t <= 5`;
/// larger `t` needs an explicit `node_budget` (combinations examined)
/// and may come back inconclusive.
pub fn find_k1t(g: &Graph, t: usize, node_budget: Option<u64>) -> Result<K1tOutcome> {
    if t > 5 && node_budget.is_none() {
        return Err(Error::TooLarge(alloc::format!(
            "exact subdivided-clique search supports t <= 5; t = {t} needs a node budget"
        )));
    }
    if t == 0 {
        return Ok(K1tOutcome::Found(MinorCertificate::empty()));
    }
    if t == 1 {
        return Ok(if g.n() == 0 {
            K1tOutcome::NotFound
        } else {
            K1tOutcome::Found(MinorCertificate::single_vertex(0))
        });
    }
    let needed = t + t * (t - 1) / 2;
    if g.n() < needed {
        return Ok(K1tOutcome::NotFound);
    }
    let branch_candidates: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= t - 1).collect();
    if branch_candidates.len() < t {
        return Ok(K1tOutcome::NotFound);
    }
    let mut budget = node_budget.unwrap_or(u64::MAX);
    let mut combo: Vec<usize> = (0..t).collect();
    loop {
        if budget == 0 {
            return Ok(K1tOutcome::BudgetExhausted);
        }
        budget -= 1;
        let branches: Vec<usize> = combo.iter().map(|&i| branch_candidates[i]).collect();
        let branch_set: BTreeSet<usize> = branches.iter().copied().collect();
        // Candidates per pair: common neighbors outside the branch set.
        let mut cands = Vec::with_capacity(t * (t - 1) / 2);
        let mut feasible = true;
        for i in 0..t {
            for j in (i + 1)..t {
                let vi = branches[i];
                let vj = branches[j];
                let common: Vec<usize> = g
                    .neighbors(vi)
                    .iter()
                    .copied()
                    .filter(|&w| !branch_set.contains(&w) && g.has_edge(w, vj))
                    .collect();
                if common.is_empty() {
                    feasible = false;
                    break;
                }
                cands.push(common);
            }
            if !feasible {
                break;
            }
        }
        if feasible {
            if let Some(assign) = distinct_representatives(&cands, g.n()) {
                // Build the depth-1 certificate: subdivision vertex for
                // pair (i, j) joins tree i, witnessing edge to root j.
                let mut trees: Vec<BranchTree> = branches
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| BranchTree::singleton(i, v))
                    .collect();
                let mut witness_edges = BTreeMap::new();
                let mut idx = 0;
                for i in 0..t {
                    for j in (i + 1)..t {
                        let w = assign[idx];
                        idx += 1;
                        trees[i].nodes.push((w, Some(branches[i])));
                        witness_edges.insert((i, j), (w, branches[j]));
                    }
                }
                let mut cert = MinorCertificate {
                    depth: 0,
                    trees,
                    witness_edges,
                };
                cert.depth = cert.measured_depth();
                return Ok(K1tOutcome::Found(cert));
            }
        }
        // Next combination in lexicographic order.
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(K1tOutcome::NotFound);
            }
            i -= 1;
            if combo[i] + (t - i) < branch_candidates.len() + 1 {
                combo[i] += 1;
                for j in (i + 1)..t {
                    combo[j] = combo[j - 1] + 1;
                }
                if combo[t - 1] < branch_candidates.len() {
                    break;
                }
            }
        }
    }
}

/// Where a failed densify attempt gave up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailStage {
    /// Degree peeling removed every vertex.
    Peel,
    /// Sampling produced an empty side.
    Sample,
    /// The dense stop neighborhood held no subdivided clique.
    CliqueSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureReport {
    pub stage: FailStage,
    pub attempts: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMinor {
    /// The contracted graph, on fresh labels.
    pub minor: Graph,
    /// Certificate of `minor` in the input graph (depth <= 1).
    pub certificate: MinorCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueMinor {
    pub t: usize,
    pub certificate: MinorCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensifyOutcome {
    Dense(DenseMinor),
    Clique(CliqueMinor),
    Failed(FailureReport),
}

/// One densify-or-clique pass: peel low-degree vertices (threshold
/// `c * t^4 * n^eps`), split along a locally optimal cut, sample one
/// side with probability `n^(-eps)`, and contract well-connected
/// vertices of the other side into sampled star centers. Either every
/// such vertex contracts (a denser 1-minor) or some dense neighborhood
/// appears, where the subdivided-clique search yields `K_t` at depth at
/// most 4. `Failed` is a legitimate outcome when the density hypotheses
/// do not hold; certificates are verified before being returned.
pub fn densify_or_clique(
    g: &Graph,
    t: usize,
    eps: f64,
    c: f64,
    rng_seed: u64,
    retries: usize,
) -> Result<DensifyOutcome> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    if c <= 0.0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "c must be positive, got {c}"
        )));
    }
    if t == 0 {
        return Ok(DensifyOutcome::Clique(CliqueMinor {
            t,
            certificate: MinorCertificate::empty(),
        }));
    }
    if t == 1 {
        return Ok(if g.n() == 0 {
            DensifyOutcome::Failed(FailureReport {
                stage: FailStage::Peel,
                attempts: 0,
                detail: String::from("empty graph has no single-vertex minor"),
            })
        } else {
            DensifyOutcome::Clique(CliqueMinor {
                t,
                certificate: MinorCertificate::single_vertex(0),
            })
        });
    }

    // Stage 1: iterative low-degree peel with a shrinking threshold.
    let t4 = (t as f64).powi(4);
    let mut alive: BTreeSet<usize> = (0..g.n()).collect();
    loop {
        let threshold = c * t4 * mathx::powf(alive.len() as f64, eps);
        let victim = alive.iter().copied().find(|&v| {
            (g.neighbors(v).iter().filter(|u| alive.contains(u)).count() as f64) <= threshold
        });
        match victim {
            Some(v) => {
                alive.remove(&v);
            }
            None => break,
        }
        if alive.is_empty() {
            return Ok(DensifyOutcome::Failed(FailureReport {
                stage: FailStage::Peel,
                attempts: 0,
                detail: alloc::format!(
                    "every vertex fell below the degree threshold c*t^4*n^eps with c={c}, t={t}"
                ),
            }));
        }
    }
    let n0 = alive.len();
    let verts: Vec<usize> = alive.iter().copied().collect();
    let deg_alive = |v: usize, alive: &BTreeSet<usize>| {
        g.neighbors(v).iter().filter(|u| alive.contains(u)).count()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut last_stage = FailStage::Sample;
    let mut last_detail = String::from("no attempts made");
    for attempt in 0..retries.max(1) {
        // Stage 2: local-search bipartition until every vertex has at
        // least half its degree crossing the cut.
        let mut in_a: BTreeMap<usize, bool> = verts
            .iter()
            .map(|&v| (v, rng.random_range(0..2u8) == 0))
            .collect();
        loop {
            let mut improved = false;
            for &v in &verts {
                let deg = deg_alive(v, &alive);
                let crossing = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| alive.contains(&u) && in_a[&u] != in_a[&v])
                    .count();
                if 2 * crossing < deg {
                    in_a.insert(v, !in_a[&v]);
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        let mut side_a: Vec<usize> = verts.iter().copied().filter(|v| in_a[v]).collect();
        let mut side_b: Vec<usize> = verts.iter().copied().filter(|v| !in_a[v]).collect();
        if side_a.len() > side_b.len() {
            core::mem::swap(&mut side_a, &mut side_b);
        }

        // Stage 3: sample A' from the smaller side.
        let p = mathx::powf(n0 as f64, -eps);
        let a_prime: BTreeSet<usize> = side_a
            .iter()
            .copied()
            .filter(|_| rng.random_range(0.0..1.0) < p)
            .collect();
        // Stage 4: the well-connected part of B.
        let b_threshold = (c / 4.0) * t4;
        let crossing_into = |v: usize| -> Vec<usize> {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|u| a_prime.contains(u) && in_a[u] != in_a[&v])
                .collect()
        };
        let b_prime: Vec<usize> = side_b
            .iter()
            .copied()
            .filter(|&v| crossing_into(v).len() as f64 >= b_threshold)
            .collect();
        if a_prime.is_empty() || b_prime.is_empty() {
            last_stage = FailStage::Sample;
            last_detail = alloc::format!(
                "attempt {attempt}: |A'|={}, |B'|={}",
                a_prime.len(),
                b_prime.len()
            );
            continue;
        }

        // Stage 5: contract B' vertices into low-degree star centers.
        let centers: Vec<usize> = a_prime.iter().copied().collect();
        let local: BTreeMap<usize, usize> =
            centers.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut minor_adj: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); centers.len()];
        let mut absorbed: Vec<Vec<usize>> = alloc::vec![Vec::new(); centers.len()];
        let mut witness: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        let mut stopped: Option<usize> = None;
        for &v in &b_prime {
            let nv: Vec<usize> = crossing_into(v).iter().map(|u| local[u]).collect();
            let low = nv
                .iter()
                .copied()
                .find(|&w| {
                    let deg_in_nv = nv.iter().filter(|&&u| minor_adj[w].contains(&u)).count();
                    2 * (deg_in_nv + 1) <= nv.len()
                });
            match low {
                Some(w) => {
                    absorbed[w].push(v);
                    for &u in &nv {
                        if u != w && minor_adj[w].insert(u) {
                            minor_adj[u].insert(w);
                            let key = (w.min(u), w.max(u));
                            let wit = if w < u { (v, centers[u]) } else { (centers[u], v) };
                            witness.insert(key, wit);
                        }
                    }
                }
                None => {
                    stopped = Some(v);
                    break;
                }
            }
        }

        if let Some(v) = stopped {
            // Dense neighborhood: the contracted graph on N_v plus v
            // itself has minimum degree at least half its order.
            let nv: Vec<usize> = crossing_into(v).iter().map(|u| local[u]).collect();
            let model_of = |i: usize| nv.iter().position(|&x| x == i);
            let h_n = nv.len() + 1;
            let v_model = h_n - 1;
            let mut h_edges = Vec::new();
            let mut trees = Vec::new();
            let mut h_witness: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
            for (mi, &ci) in nv.iter().enumerate() {
                let center = centers[ci];
                let mut nodes = alloc::vec![(center, None)];
                nodes.extend(absorbed[ci].iter().map(|&x| (x, Some(center))));
                trees.push(BranchTree {
                    model_vertex: mi,
                    nodes,
                });
                for &cj in minor_adj[ci].iter() {
                    if let Some(mj) = model_of(cj) {
                        if mi < mj {
                            h_edges.push((mi, mj));
                            let &(x, y) = witness
                                .get(&(ci.min(cj), ci.max(cj)))
                                .expect("recorded when the edge was created");
                            let oriented = if ci < cj { (x, y) } else { (y, x) };
                            h_witness.insert((mi, mj), oriented);
                        }
                    }
                }
            }
            trees.push(BranchTree::singleton(v_model, v));
            for (mi, &ci) in nv.iter().enumerate() {
                h_edges.push((mi, v_model));
                h_witness.insert((mi, v_model), (centers[ci], v));
            }
            let h = Graph::from_edges(h_n, &h_edges)?;
            let mut h_cert = MinorCertificate {
                depth: 0,
                trees,
                witness_edges: h_witness,
            };
            h_cert.depth = h_cert.measured_depth();
            let report = verify_certificate(g, &h, &h_cert);
            if !report.valid {
                return Err(Error::InvalidArgument(alloc::format!(
                    "internal: dense-neighborhood certificate invalid: {}",
                    report.violations[0]
                )));
            }
            match find_k1t(&h, t, None)? {
                K1tOutcome::Found(k1t_cert) => {
                    let composed = compose_certificates(g, &h_cert, &k1t_cert)?;
                    let model = composed.model()?;
                    let report = verify_certificate(g, &model, &composed);
                    if !report.valid {
                        return Err(Error::InvalidArgument(alloc::format!(
                            "internal: composed clique certificate invalid: {}",
                            report.violations[0]
                        )));
                    }
                    return Ok(DensifyOutcome::Clique(CliqueMinor {
                        t,
                        certificate: composed,
                    }));
                }
                _ => {
                    last_stage = FailStage::CliqueSearch;
                    last_detail = alloc::format!(
                        "attempt {attempt}: dense neighborhood of {} vertices held no subdivided K_{t}",
                        h_n
                    );
                    continue;
                }
            }
        }

        // Every B' vertex contracted: emit the 1-minor on A'.
        let mut edges = Vec::new();
        for (i, nb) in minor_adj.iter().enumerate() {
            for &j in nb {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        let minor = Graph::from_edges(centers.len(), &edges)?;
        let trees: Vec<BranchTree> = centers
            .iter()
            .enumerate()
            .map(|(i, &center)| {
                let mut nodes = alloc::vec![(center, None)];
                nodes.extend(absorbed[i].iter().map(|&x| (x, Some(center))));
                BranchTree {
                    model_vertex: i,
                    nodes,
                }
            })
            .collect();
        let mut certificate = MinorCertificate {
            depth: 0,
            trees,
            witness_edges: witness,
        };
        certificate.depth = certificate.measured_depth();
        let report = verify_certificate(g, &minor, &certificate);
        if !report.valid {
            return Err(Error::InvalidArgument(alloc::format!(
                "internal: dense-minor certificate invalid: {}",
                report.violations[0]
            )));
        }
        return Ok(DensifyOutcome::Dense(DenseMinor { minor, certificate }));
    }
    Ok(DensifyOutcome::Failed(FailureReport {
        stage: last_stage,
        attempts: retries.max(1),
        detail: last_detail,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterateOutcome {
    pub rounds: usize,
    pub outcome: DensifyOutcome,
}

/// Iterate [`densify_or_clique`] up to `m` times with the density budget
/// `c_j = 2 * 32^(m-j)`, composing certificates back into the input
/// graph after every round. Composition uses the measured depths, which
/// stay within `4^rounds`.
pub fn iterate_densify(
    g: &Graph,
    t: usize,
    eps: f64,
    m: usize,
    rng_seed: u64,
) -> Result<IterateOutcome> {
    if m == 0 {
        return Err(Error::InvalidArgument(String::from(
            "iteration count m must be at least 1",
        )));
    }
    let mut current = g.clone();
    let mut chain = MinorCertificate::identity(g);
    for round in 0..m {
        let c_round = 2.0 * mathx::powf(32.0, (m - round) as f64);
        let out = densify_or_clique(
            &current,
            t,
            eps,
            c_round,
            rng_seed.wrapping_add(round as u64),
            16,
        )?;
        match out {
            DensifyOutcome::Clique(cl) => {
                let composed = compose_certificates(g, &chain, &cl.certificate)?;
                return Ok(IterateOutcome {
                    rounds: round + 1,
                    outcome: DensifyOutcome::Clique(CliqueMinor {
                        t,
                        certificate: composed,
                    }),
                });
            }
            DensifyOutcome::Dense(dn) => {
                chain = compose_certificates(g, &chain, &dn.certificate)?;
                current = dn.minor;
            }
            DensifyOutcome::Failed(f) => {
                return Ok(IterateOutcome {
                    rounds: round + 1,
                    outcome: DensifyOutcome::Failed(f),
                });
            }
        }
    }
    Ok(IterateOutcome {
        rounds: m,
        outcome: DensifyOutcome::Dense(DenseMinor {
            certificate: chain,
            minor: current,
        }),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShallowCliqueReport {
    pub m: u64,
    pub t: usize,
    /// Nominal depth budget `4^m` (may be infinite as a float).
    pub d: f64,
    pub rounds: usize,
    pub outcome: DensifyOutcome,
}

/// Shallow-clique extraction driver: `m = ceil(18/eps^2)`,
/// `t = floor(n^(eps/6))`, depth budget `4^m`, then the iterated
/// densify pipeline at density exponent `eps/6`. Tiny `t` short-circuits
/// with a canonical certificate.
pub fn shallow_clique(g: &Graph, eps: f64, rng_seed: u64) -> Result<ShallowCliqueReport> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "eps must lie in (0, 1], got {eps}"
        )));
    }
    let m = mathx::ceil_guarded(18.0 / (eps * eps)) as u64;
    let t = mathx::floor_guarded(mathx::powf(g.n() as f64, eps / 6.0)) as usize;
    let d = mathx::powf(4.0, m as f64);
    if t <= 1 {
        let certificate = if t == 0 {
            MinorCertificate::empty()
        } else {
            MinorCertificate::single_vertex(0)
        };
        return Ok(ShallowCliqueReport {
            m,
            t,
            d,
            rounds: 0,
            outcome: DensifyOutcome::Clique(CliqueMinor { t, certificate }),
        });
    }
    let capped_rounds = (m as usize).min(64);
    let it = iterate_densify(g, t, eps / 6.0, capped_rounds, rng_seed)?;
    Ok(ShallowCliqueReport {
        m,
        t,
        d,
        rounds: it.rounds,
        outcome: it.outcome,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Iter3Params {
    pub eps: f64,
    pub m: u64,
    pub t: u64,
}

/// Parameter calculator for the small-graph clique-extraction regime:
/// `eps = 1/(6 k^(1-delta) ln b)`, `m = ceil(1/(2 eps^2))`,
/// `t = floor(e^(k^delta / 6))`.
pub fn iter3_params(k: u64, delta: f64, mu: f64, b: f64) -> Result<Iter3Params> {
    if !(delta > 2.0 / 3.0 && delta <= 1.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "need 2/3 < delta <= 1, got {delta}"
        )));
    }
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "need 0 < mu <= 1, got {mu}"
        )));
    }
    if !(b > 1.0) {
        return Err(Error::InvalidArgument(alloc::format!("need b > 1, got {b}")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument(String::from("need k >= 1")));
    }
    let eps = 1.0 / (6.0 * mathx::powf(k as f64, 1.0 - delta) * mathx::ln(b));
    let m = mathx::ceil_guarded(1.0 / (2.0 * eps * eps));
    let t_f = mathx::floor_guarded(mathx::exp(mathx::powf(k as f64, delta) / 6.0));
    let t = if t_f >= u64::MAX as f64 {
        u64::MAX
    } else {
        t_f as u64
    };
    Ok(Iter3Params {
        eps,
        m: m as u64,
        t,
    })
}

/// Expansion bound from a witness profile: `f(k) = 2 * g(1/(4k+4), k)`.
pub fn expansion_bound_from_witness(g: impl Fn(f64, usize) -> f64, k: usize) -> f64 {
    2.0 * g(1.0 / (4.0 * k as f64 + 4.0), k)
}
