//! One-mode projections onto the primary side.
//!
//! Two primary vertices are adjacent when they share at least one secondary
//! neighbor. The weighted variant sums `1 / d(v)` over the shared neighbors.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::{BipartiteGraph, VertexId};

pub type ProjectedEdgeId = u32;

/// Simple undirected graph on the primary vertices of a bipartite graph.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedGraph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    /// Undirected edge id of each adjacency entry.
    entry_edge: Vec<ProjectedEdgeId>,
    weights: Option<Vec<f64>>,
    /// `(a, b)` with `a < b`, indexed by edge id.
    endpoints: Vec<(VertexId, VertexId)>,
}

impl ProjectedGraph {
    /// Builds a graph from undirected edges, mostly for tests and the
    /// baselines' own fixtures. Self loops and duplicates are dropped.
    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let lists = adjacency_lists(vertex_count, edges.iter().map(|&(a, b)| (a, b, 1.0)))?;
        Ok(Self::from_lists(lists, false))
    }

    /// Weighted variant of [`from_edges`](Self::from_edges). Duplicate pairs
    /// keep the first weight.
    pub fn from_weighted_edges(vertex_count: usize, edges: &[(VertexId, VertexId, f64)]) -> Result<Self> {
        if let Some(&(a, b, w)) = edges.iter().find(|e| !(e.2 > 0.0 && e.2.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "edge ({a}, {b}) has non-positive weight {w}"
            )));
        }
        let lists = adjacency_lists(vertex_count, edges.iter().copied())?;
        Ok(Self::from_lists(lists, true))
    }

    fn from_lists(lists: Vec<Vec<(VertexId, f64)>>, weighted: bool) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        for list in &lists {
            offsets.push(offsets.last().unwrap() + list.len());
        }
        let targets = lists.iter().flatten().map(|&(b, _)| b).collect();
        let weights = weighted.then(|| lists.iter().flatten().map(|&(_, w)| w).collect());
        let mut g = ProjectedGraph {
            offsets,
            targets,
            entry_edge: Vec::new(),
            weights,
            endpoints: Vec::new(),
        };
        g.assign_edge_ids();
        g
    }

    fn assign_edge_ids(&mut self) {
        let mut entry_edge = vec![0; self.targets.len()];
        let mut endpoints = Vec::with_capacity(self.targets.len() / 2);
        for a in 0..self.vertex_count() {
            let start = self.offsets[a];
            for (i, &b) in self.neighbors(a as VertexId).iter().enumerate() {
                if (b as usize) <= a {
                    continue;
                }
                let id = endpoints.len() as ProjectedEdgeId;
                endpoints.push((a as VertexId, b));
                entry_edge[start + i] = id;
                let back = self
                    .neighbors(b)
                    .binary_search(&(a as VertexId))
                    .expect("adjacency is symmetric");
                entry_edge[self.offsets[b as usize] + back] = id;
            }
        }
        self.entry_edge = entry_edge;
        self.endpoints = endpoints;
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn neighbors(&self, a: VertexId) -> &[VertexId] {
        let a = a as usize;
        &self.targets[self.offsets[a]..self.offsets[a + 1]]
    }

    /// Edge ids aligned with [`neighbors`](Self::neighbors).
    pub fn edge_ids(&self, a: VertexId) -> &[ProjectedEdgeId] {
        let a = a as usize;
        &self.entry_edge[self.offsets[a]..self.offsets[a + 1]]
    }

    /// Weights aligned with [`neighbors`](Self::neighbors), if weighted.
    pub fn weights(&self, a: VertexId) -> Option<&[f64]> {
        let a = a as usize;
        self.weights
            .as_ref()
            .map(|w| &w[self.offsets[a]..self.offsets[a + 1]])
    }

    pub fn degree(&self, a: VertexId) -> usize {
        self.neighbors(a).len()
    }

    /// Sum of incident weights (plain degree when unweighted).
    pub fn weighted_degree(&self, a: VertexId) -> f64 {
        match self.weights(a) {
            Some(w) => w.iter().sum(),
            None => self.degree(a) as f64,
        }
    }

    pub fn edge_endpoints(&self, e: ProjectedEdgeId) -> (VertexId, VertexId) {
        self.endpoints[e as usize]
    }

    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<ProjectedEdgeId> {
        self.neighbors(a)
            .binary_search(&b)
            .ok()
            .map(|i| self.edge_ids(a)[i])
    }

    pub fn weight(&self, a: VertexId, b: VertexId) -> Option<f64> {
        let i = self.neighbors(a).binary_search(&b).ok()?;
        Some(self.weights(a).map_or(1.0, |w| w[i]))
    }
}

fn adjacency_lists(
    vertex_count: usize,
    edges: impl Iterator<Item = (VertexId, VertexId, f64)>,
) -> Result<Vec<Vec<(VertexId, f64)>>> {
    let mut lists: Vec<Vec<(VertexId, f64)>> = vec![Vec::new(); vertex_count];
    for (a, b, w) in edges {
        if a as usize >= vertex_count || b as usize >= vertex_count {
            return Err(Error::InvalidArgument(format!(
                "edge ({a}, {b}) out of range for {vertex_count} vertices"
            )));
        }
        if a != b {
            lists[a as usize].push((b, w));
            lists[b as usize].push((a, w));
        }
    }
    for list in &mut lists {
        list.sort_by_key(|&(b, _)| b);
        list.dedup_by_key(|&mut (b, _)| b);
    }
    Ok(lists)
}

struct Scratch {
    acc: Vec<f64>,
    seen: Vec<bool>,
    touched: Vec<VertexId>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            acc: vec![0.0; n],
            seen: vec![false; n],
            touched: Vec::new(),
        }
    }
}

/// Clique expansion of every secondary vertex around `u`, deduplicated.
/// Leaves the sorted partners in `s.touched` and their weights in `s.acc`;
/// the caller must call [`Scratch::reset`].
fn expand(g: &BipartiteGraph, u: VertexId, s: &mut Scratch, weighted: bool) {
    for &v in g.neighbors_u(u) {
        let w = if weighted { 1.0 / g.degree_v(v) as f64 } else { 0.0 };
        for &x in g.neighbors_v(v) {
            if x == u {
                continue;
            }
            if !s.seen[x as usize] {
                s.seen[x as usize] = true;
                s.touched.push(x);
            }
            if weighted {
                s.acc[x as usize] += w;
            }
        }
    }
    s.touched.sort_unstable();
}

impl Scratch {
    fn reset(&mut self) {
        for &x in &self.touched {
            self.seen[x as usize] = false;
            self.acc[x as usize] = 0.0;
        }
        self.touched.clear();
    }
}

fn project(g: &BipartiteGraph, weighted: bool, exec: Exec) -> Result<ProjectedGraph> {
    let n = g.u_count();
    // First pass sizes the adjacency so an oversized projection fails with an
    // error instead of aborting mid-construction.
    let degrees = exec::map_indexed(exec, n, || Scratch::new(n), |s, u| {
        expand(g, u as VertexId, s, false);
        let d = s.touched.len();
        s.reset();
        d
    });
    let total: usize = degrees.iter().sum();

    let mut targets: Vec<VertexId> = Vec::new();
    targets
        .try_reserve_exact(total)
        .map_err(|_| Error::Allocation { what: "projection adjacency" })?;
    let mut weights: Vec<f64> = Vec::new();
    if weighted {
        weights
            .try_reserve_exact(total)
            .map_err(|_| Error::Allocation { what: "projection weights" })?;
    }
    let mut entry_edge: Vec<ProjectedEdgeId> = Vec::new();
    entry_edge
        .try_reserve_exact(total)
        .map_err(|_| Error::Allocation { what: "projection edge ids" })?;
    if total / 2 > ProjectedEdgeId::MAX as usize {
        return Err(Error::Allocation { what: "projection edge ids (exceeds 32 bits)" });
    }

    let lists = exec::map_indexed(exec, n, || Scratch::new(n), |s, u| {
        expand(g, u as VertexId, s, weighted);
        let list: Vec<(VertexId, f64)> = s.touched.iter().map(|&x| (x, s.acc[x as usize])).collect();
        s.reset();
        list
    });

    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for list in lists {
        for (x, w) in list {
            targets.push(x);
            if weighted {
                weights.push(w);
            }
        }
        offsets.push(targets.len());
    }
    entry_edge.resize(total, 0);

    let mut pg = ProjectedGraph {
        offsets,
        targets,
        entry_edge,
        weights: weighted.then_some(weights),
        endpoints: Vec::new(),
    };
    pg.assign_edge_ids();
    Ok(pg)
}

/// Unweighted projection: `(u1, u2)` is an edge iff `N(u1) ∩ N(u2) ≠ ∅`.
pub fn project_unweighted(g: &BipartiteGraph) -> Result<ProjectedGraph> {
    project(g, false, Exec::default())
}

/// Weighted projection with `w(u1, u2) = Σ_{v ∈ N(u1) ∩ N(u2)} 1 / d(v)`.
pub fn project_weighted(g: &BipartiteGraph) -> Result<ProjectedGraph> {
    project(g, true, Exec::default())
}

pub fn project_unweighted_with(g: &BipartiteGraph, exec: Exec) -> Result<ProjectedGraph> {
    project(g, false, exec)
}

pub fn project_weighted_with(g: &BipartiteGraph, exec: Exec) -> Result<ProjectedGraph> {
    project(g, true, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_bipartite, PrimarySide};

    /// Projection example: A, B, C share secondary vertex 1 (degree 3), A and
    /// B also share 2 (degree 2), C and D share 3.
    fn fig_projection() -> BipartiteGraph {
        let text = "A 1\nB 1\nC 1\nA 2\nB 2\nC 3\nD 3\n";
        load_bipartite(text.as_bytes(), PrimarySide::Left).unwrap().graph
    }

    #[test]
    fn shared_affiliation_forms_triangle() {
        let g = fig_projection();
        let p = project_unweighted(&g).unwrap();
        let (a, b, c, d) = (0, 1, 2, 3);
        assert_eq!(p.neighbors(a), &[b, c]);
        assert_eq!(p.neighbors(b), &[a, c]);
        assert_eq!(p.neighbors(c), &[a, b, d]);
        assert_eq!(p.neighbors(d), &[c]);
        assert_eq!(p.edge_count(), 4);
        assert!(!p.is_weighted());
    }

    #[test]
    fn weight_is_sum_of_inverse_degrees() {
        let g = fig_projection();
        let p = project_weighted(&g).unwrap();
        assert!((p.weight(0, 1).unwrap() - (1.0 / 3.0 + 1.0 / 2.0)).abs() < 1e-12);
        assert!((p.weight(2, 3).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(p.weight(0, 1), p.weight(1, 0));
    }

    #[test]
    fn star_becomes_clique() {
        let edges: Vec<(VertexId, VertexId)> = (0..6).map(|u| (u, 0)).collect();
        let g = BipartiteGraph::from_edges(6, 1, &edges).unwrap();
        let p = project_unweighted(&g).unwrap();
        assert_eq!(p.edge_count(), 15);
        for a in 0..6 {
            assert_eq!(p.degree(a), 5);
        }
    }

    #[test]
    fn edge_ids_are_consistent() {
        let g = fig_projection();
        let p = project_unweighted(&g).unwrap();
        for e in 0..p.edge_count() as ProjectedEdgeId {
            let (a, b) = p.edge_endpoints(e);
            assert!(a < b);
            assert_eq!(p.edge_id(a, b), Some(e));
            assert_eq!(p.edge_id(b, a), Some(e));
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = fig_projection();
        assert_eq!(
            project_weighted_with(&g, Exec::Sequential).unwrap(),
            project_weighted_with(&g, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(ProjectedGraph::from_weighted_edges(2, &[(0, 1, -1.0)]).is_err());
        assert!(ProjectedGraph::from_weighted_edges(2, &[(0, 1, 0.0)]).is_err());
    }
}
