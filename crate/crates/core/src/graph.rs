//! Simple undirected graphs on dense integer vertices, the generators and
//! transformations used across the crate, and the edge-list text format.
//!
//! Vertices are `0..n-1`. Graphs are immutable after construction, never
//! contain loops or parallel edges, and keep neighbor lists sorted.

use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Simple undirected graph with array-backed adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: alloc::vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Build from an edge list. Duplicate edges are collapsed; loops are
    /// rejected, as are endpoints outside `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = alloc::vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidArgument(alloc::format!(
                    "loop edge at vertex {u}"
                )));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(alloc::format!(
                    "edge ({u}, {v}) out of range for n={n}"
                )));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Connected components as sorted vertex lists, unordered among
    /// themselves only by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = alloc::vec![false; n];
        let mut comps = Vec::new();
        let mut queue = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.clear();
            queue.push(s);
            let mut comp = alloc::vec![s];
            while let Some(v) = queue.pop() {
                for &u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = alloc::vec![None; self.n()];
        dist[src] = Some(0);
        let mut frontier = alloc::vec![src];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                for &u in self.neighbors(v) {
                    if dist[u].is_none() {
                        dist[u] = Some(d);
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    // --- generators -------------------------------------------------

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("clique edges are valid")
    }

    /// Plain 2-dimensional grid graph on `rows * cols` vertices in
    /// row-major order.
    pub fn grid2d(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::from_edges(rows * cols, &edges).expect("grid edges are valid")
    }

    /// The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9,
    /// spokes i -- i+5.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).expect("petersen edges are valid")
    }
}

/// Sorted set of vertex ids of some host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(alloc::vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v: Vec<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&v| !other.contains(v)).collect())
    }

    /// Complement within `0..n`.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet((0..n).filter(|&v| !self.contains(v)).collect())
    }

    /// Error unless every id is a vertex of `g`.
    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        if let Some(v) = self.0.iter().find(|&&v| v >= g.n()) {
            return Err(Error::InvalidArgument(alloc::format!(
                "vertex {v} out of range for n={}",
                g.n()
            )));
        }
        Ok(())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::from_unsorted(v)
    }
}

// --- edge-list text format -------------------------------------------

/// Parse the canonical edge-list format: optional `#` comment lines, a
/// header `n m`, then `m` lines `u v`. Duplicate edges collapse; loops
/// and out-of-range endpoints are rejected with their line number.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| (i + 1, l.trim()));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: String::from("missing header line \"n m\""),
    })?;
    let mut parts = header.split_whitespace();
    let n: usize = parse_field(parts.next(), header_line, "vertex count")?;
    let m: usize = parse_field(parts.next(), header_line, "edge count")?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            line: header_line,
            message: String::from("header must be exactly \"n m\""),
        });
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: header_line,
            message: alloc::format!("expected {m} edge lines, found {}", edges.len()),
        })?;
        let mut parts = line.split_whitespace();
        let u: usize = parse_field(parts.next(), line_no, "edge endpoint")?;
        let v: usize = parse_field(parts.next(), line_no, "edge endpoint")?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: String::from("edge line must be exactly \"u v\""),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                message: alloc::format!("loop edge at vertex {u}"),
            });
        }
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: line_no,
                message: alloc::format!("vertex id out of range: ({u}, {v}) with n={n}"),
            });
        }
        edges.push((u, v));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            message: String::from("trailing content after edge list"),
        });
    }
    Graph::from_edges(n, &edges)
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<usize> {
    field
        .ok_or(Error::Parse {
            line,
            message: alloc::format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| Error::Parse {
            line,
            message: alloc::format!("malformed {what}"),
        })
}

/// Canonical text form: header then edges sorted with `u < v`.
/// Round-trips through [`parse_edge_list`].
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = alloc::format!("{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push('\n');
        out.push_str(&alloc::format!("{u} {v}"));
    }
    out
}

// --- transformations ---------------------------------------------------

/// Strong product of three `n`-vertex paths: vertex `(i, j, k)` with
/// `1 <= i, j, k <= n` flattens to `(i-1)*n^2 + (j-1)*n + (k-1)`; two
/// distinct triples are adjacent iff all coordinate differences are at
/// most 1 in absolute value.
pub fn strong_product_cube(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument(String::from(
            "strong_product_cube requires n >= 1",
        )));
    }
    let id = |i: usize, j: usize, k: usize| (i - 1) * n * n + (j - 1) * n + (k - 1);
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let v = id(i, j, k);
                // Emit each edge once from its lexicographically smaller
                // endpoint: neighbors with a strictly larger flat id.
                for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        for dk in -1i64..=1 {
                            let (i2, j2, k2) =
                                (i as i64 + di, j as i64 + dj, k as i64 + dk);
                            if i2 < 1 || j2 < 1 || k2 < 1 {
                                continue;
                            }
                            let (i2, j2, k2) = (i2 as usize, j2 as usize, k2 as usize);
                            if i2 > n || j2 > n || k2 > n {
                                continue;
                            }
                            let u = id(i2, j2, k2);
                            if u > v {
                                edges.push((v, u));
                            }
                        }
                    }
                }
            }
        }
    }
    Graph::from_edges(n * n * n, &edges)
}

/// Replace each edge `uv` by a path with `reps(uv)` internal vertices.
/// Keys must be edges of `g` (in either orientation); missing edges keep
/// count 0. New vertices are appended after `0..n` in the order of the
/// canonical edge enumeration.
pub fn subdivide_edges(g: &Graph, reps: &[((usize, usize), usize)]) -> Result<Graph> {
    let mut counts: Vec<((usize, usize), usize)> = Vec::with_capacity(reps.len());
    for &((u, v), c) in reps {
        let key = (u.min(v), u.max(v));
        if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
            return Err(Error::InvalidArgument(alloc::format!(
                "({u}, {v}) is not an edge of the graph"
            )));
        }
        if let Some(entry) = counts.iter_mut().find(|(k, _)| *k == key) {
            entry.1 = c;
        } else {
            counts.push((key, c));
        }
    }
    let count_of = |e: (usize, usize)| {
        counts
            .iter()
            .find(|(k, _)| *k == e)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    };
    let mut next = g.n();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let c = count_of((u, v));
        if c == 0 {
            edges.push((u, v));
        } else {
            let mut prev = u;
            for _ in 0..c {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, v));
        }
    }
    Graph::from_edges(next, &edges)
}

/// Subdivide every edge the same number of times.
pub fn subdivide_uniform(g: &Graph, count: usize) -> Graph {
    let reps: Vec<_> = g.edges().map(|e| (e, count)).collect();
    subdivide_edges(g, &reps).expect("own edges are valid keys")
}

/// Subgraph induced by `s` on fresh labels `0..s.len()`, plus the map
/// from new labels back to the originals.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
    s.validate_for(g)?;
    let map: Vec<usize> = s.iter().collect();
    let mut inv = alloc::vec![usize::MAX; g.n()];
    for (new, &old) in map.iter().enumerate() {
        inv[old] = new;
    }
    let mut edges = Vec::new();
    for (new_u, &old_u) in map.iter().enumerate() {
        for &old_v in g.neighbors(old_u) {
            if inv[old_v] != usize::MAX && inv[old_v] > new_u {
                edges.push((new_u, inv[old_v]));
            }
        }
    }
    Ok((Graph::from_edges(map.len(), &edges)?, map))
}

/// Basic shape of a graph: order, size, maximum degree and component
/// sizes sorted descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub component_sizes: Vec<usize>,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    let mut component_sizes: Vec<usize> = g.components().iter().map(Vec::len).collect();
    component_sizes.sort_unstable_by(|a, b| b.cmp(a));
    GraphStats {
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        component_sizes,
    }
}
