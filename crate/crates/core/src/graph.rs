//! Immutable simple undirected graphs over contiguous 0-based vertex ids,
//! with the metrics (distance, diameter, radius) and the small-subgraph
//! detectors (triangle, diamond, K4) used by the reduction rules and the
//! solvers.

use std::collections::VecDeque;

use thiserror::Error;

/// Errors raised while constructing or querying a [`Graph`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id {id} out of range (vertex count {n})")]
    VertexOutOfRange { id: u32, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
}

/// Simple undirected graph. Adjacency lists are sorted and deduplicated,
/// which makes every "first witness" scan below deterministic.
///
/// Immutable after construction; all operations are read-only, so values
/// can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are deduplicated.
    pub fn build(n: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::VertexOutOfRange { id: u, n });
            }
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange { id: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            edge_count: edge_count / 2,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.adj.len() as u32
    }

    /// Edges as (u, v) pairs with u < v, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    fn check_vertex(&self, v: u32) -> Result<(), GraphError> {
        if (v as usize) < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                id: v,
                n: self.adj.len(),
            })
        }
    }
}

/// A set of vertices of a specific graph; construction checks the id range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<u32>,
}

impl VertexSet {
    pub fn new(g: &Graph, members: impl IntoIterator<Item = u32>) -> Result<VertexSet, GraphError> {
        let mut v: Vec<u32> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if let Some(&last) = v.last() {
            g.check_vertex(last)?;
        }
        Ok(VertexSet { members: v })
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }
}

/// Distance/degree summary of a graph. `diameter`/`radius` are `None` for
/// disconnected graphs (the infinity marker).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphMetrics {
    pub diameter: Option<u32>,
    pub radius: Option<u32>,
    pub min_degree: usize,
    pub max_degree: usize,
}

/// Hop distances from `source`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: u32) -> Result<Vec<Option<u32>>, GraphError> {
    g.check_vertex(source)?;
    let mut dist = vec![None; g.vertex_count()];
    dist[source as usize] = Some(0);
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize].unwrap();
        for &v in g.neighbors(u) {
            if dist[v as usize].is_none() {
                dist[v as usize] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

/// Exact diameter, radius and degree extremes via all-sources BFS.
pub fn metrics(g: &Graph) -> GraphMetrics {
    let n = g.vertex_count();
    if n == 0 {
        return GraphMetrics {
            diameter: Some(0),
            radius: Some(0),
            min_degree: 0,
            max_degree: 0,
        };
    }
    let mut diameter = Some(0u32);
    let mut radius: Option<u32> = None;
    for v in g.vertices() {
        let dist = bfs_distances(g, v).expect("in range");
        let mut ecc = Some(0u32);
        for d in dist {
            match d {
                Some(d) => {
                    if let Some(e) = ecc {
                        ecc = Some(e.max(d));
                    }
                }
                None => ecc = None,
            }
        }
        diameter = match (diameter, ecc) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        radius = match (radius, ecc) {
            (None, e) => e,
            (Some(r), Some(e)) => Some(r.min(e)),
            (r, None) => r,
        };
    }
    if diameter.is_none() {
        radius = None;
    }
    let min_degree = g.vertices().map(|v| g.degree(v)).min().unwrap_or(0);
    let max_degree = g.vertices().map(|v| g.degree(v)).max().unwrap_or(0);
    GraphMetrics {
        diameter,
        radius,
        min_degree,
        max_degree,
    }
}

fn common_neighbors(g: &Graph, u: u32, v: u32) -> Vec<u32> {
    let (mut a, mut b) = (g.neighbors(u).iter(), g.neighbors(v).iter());
    let mut out = Vec::new();
    let (mut x, mut y) = (a.next(), b.next());
    while let (Some(&p), Some(&q)) = (x, y) {
        match p.cmp(&q) {
            std::cmp::Ordering::Less => x = a.next(),
            std::cmp::Ordering::Greater => y = b.next(),
            std::cmp::Ordering::Equal => {
                out.push(p);
                x = a.next();
                y = b.next();
            }
        }
    }
    out
}

/// First 4-clique in lexicographic order of the sorted id tuple, if any.
pub fn find_k4(g: &Graph) -> Option<[u32; 4]> {
    for a in g.vertices() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            let ab = common_neighbors(g, a, b);
            for &c in ab.iter().filter(|&&c| c > b) {
                for &d in ab.iter().filter(|&&d| d > c) {
                    if g.has_edge(c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// An induced diamond (K4 minus one edge): the unique non-adjacent pair and
/// the adjacent pair of common neighbors completing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiamondWitness {
    pub non_edge: (u32, u32),
    pub adjacent: (u32, u32),
}

/// First induced diamond in lexicographic order: non-adjacent pairs (u1,u2)
/// with u1 < u2 are scanned in order, then adjacent common-neighbor pairs
/// (u3,u4) with u3 < u4.
pub fn find_diamond(g: &Graph) -> Option<DiamondWitness> {
    let n = g.vertex_count() as u32;
    for u1 in 0..n {
        for u2 in u1 + 1..n {
            if g.has_edge(u1, u2) {
                continue;
            }
            let common = common_neighbors(g, u1, u2);
            for (i, &u3) in common.iter().enumerate() {
                for &u4 in &common[i + 1..] {
                    if g.has_edge(u3, u4) {
                        return Some(DiamondWitness {
                            non_edge: (u1, u2),
                            adjacent: (u3, u4),
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn is_triangle_free(g: &Graph) -> bool {
    for (u, v) in g.edges() {
        if !common_neighbors(g, u, v).is_empty() {
            return false;
        }
    }
    true
}

/// Connected components as sorted vertex lists, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in g.vertices() {
        if seen[start as usize] {
            continue;
        }
        let mut part = vec![start];
        seen[start as usize] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    part.push(v);
                    queue.push_back(v);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// Maximum degree of the subgraph induced by the open neighborhood of `v`.
/// In an irreducible graph this is at most 1 for every vertex.
pub fn neighborhood_max_degree(g: &Graph, v: u32) -> Result<usize, GraphError> {
    g.check_vertex(v)?;
    let nv = g.neighbors(v);
    let mut max = 0;
    for &x in nv {
        let deg = common_neighbors(g, v, x).len();
        max = max.max(deg);
    }
    Ok(max)
}

/// Subgraph induced by `keep` (ascending vertex ids). Returns the graph and
/// the map from new ids to original ids.
pub fn induced_subgraph(g: &Graph, keep: &[u32]) -> (Graph, Vec<u32>) {
    let mut index = vec![u32::MAX; g.vertex_count()];
    for (new, &old) in keep.iter().enumerate() {
        index[old as usize] = new as u32;
    }
    let mut edges = Vec::new();
    for &old in keep {
        for &w in g.neighbors(old) {
            if old < w && index[w as usize] != u32::MAX {
                edges.push((index[old as usize], index[w as usize]));
            }
        }
    }
    let sub = Graph::build(keep.len(), &edges).expect("induced edges are valid");
    (sub, keep.to_vec())
}
