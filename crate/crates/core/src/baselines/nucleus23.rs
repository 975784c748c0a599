use std::sync::atomic::{AtomicU64, Ordering};

use crate::butterfly::intersect_sorted;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::BipartiteGraph;
use crate::hierarchy::{assemble, components, sweep, Links, NodeKind, NucleusTree};
use crate::projection::{ProjectedEdgeId, ProjectedGraph};
use crate::queue::PeelQueue;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NucleusEdgeResult {
    /// Peeling value of every projected edge.
    pub kappa: Vec<u64>,
    pub triangles_initial: Vec<u64>,
    pub peel_order: Vec<ProjectedEdgeId>,
}

/// Triangles per projected edge. Each triangle `a < b < c` is found once,
/// from its smallest vertex. Returns the per-edge counts and the total.
pub fn count_triangles(gp: &ProjectedGraph) -> (Vec<u64>, u64) {
    count_triangles_with(gp, Exec::default())
}

pub fn count_triangles_with(gp: &ProjectedGraph, exec: Exec) -> (Vec<u64>, u64) {
    let counters: Vec<AtomicU64> = (0..gp.edge_count()).map(|_| AtomicU64::new(0)).collect();
    let per_vertex = exec::map_indexed(exec, gp.vertex_count(), || (), |_, a| {
        let a = a as u32;
        let na = gp.neighbors(a);
        let ia = gp.edge_ids(a);
        let above = na.partition_point(|&x| x <= a);
        let mut found = 0u64;
        for j in above..na.len() {
            let b = na[j];
            let nb = gp.neighbors(b);
            let ib = gp.edge_ids(b);
            let sa = na.partition_point(|&x| x <= b);
            let sb = nb.partition_point(|&x| x <= b);
            let mut closed = 0u64;
            intersect_sorted(&na[sa..], &nb[sb..], |x, y| {
                closed += 1;
                counters[ia[sa + x] as usize].fetch_add(1, Ordering::Relaxed);
                counters[ib[sb + y] as usize].fetch_add(1, Ordering::Relaxed);
            });
            if closed > 0 {
                counters[ia[j] as usize].fetch_add(closed, Ordering::Relaxed);
            }
            found += closed;
        }
        found
    });
    let counts = counters.into_iter().map(AtomicU64::into_inner).collect();
    (counts, per_vertex.into_iter().sum())
}

/// Calls `f` with the other two edges of every triangle on edge `e` whose
/// edges pass `active`.
fn for_each_triangle(gp: &ProjectedGraph, e: ProjectedEdgeId, active: impl Fn(u32) -> bool, mut f: impl FnMut(u32, u32)) {
    let (a, b) = gp.edge_endpoints(e);
    let (ia, ib) = (gp.edge_ids(a), gp.edge_ids(b));
    intersect_sorted(gp.neighbors(a), gp.neighbors(b), |x, y| {
        let (ac, bc) = (ia[x], ib[y]);
        if active(ac) && active(bc) {
            f(ac, bc)
        }
    });
}

/// Triangle peeling of the projected edges. Each triangle is discounted
/// once, at its first peeled edge, with the clamped decrement used by the
/// other peelers.
pub fn nucleus23_decompose(gp: &ProjectedGraph) -> NucleusEdgeResult {
    let (initial, _) = count_triangles(gp);
    let m = gp.edge_count();
    let mut queue = PeelQueue::new(initial.clone());
    let mut kappa = vec![0u64; m];
    let mut peeled = vec![false; m];
    let mut peel_order = Vec::with_capacity(m);
    let mut found = Vec::new();

    while let Some((e, k)) = queue.pop_min() {
        kappa[e as usize] = k;
        peeled[e as usize] = true;
        peel_order.push(e);
        found.clear();
        for_each_triangle(gp, e, |x| !peeled[x as usize], |x, y| found.push((x, y)));
        for &(x, y) in &found {
            queue.decrease_clamped(x, 1, k);
            queue.decrease_clamped(y, 1, k);
        }
    }

    NucleusEdgeResult {
        kappa,
        triangles_initial: initial,
        peel_order,
    }
}

pub(crate) struct TriangleLinks<'a> {
    pub gp: &'a ProjectedGraph,
}

impl Links for TriangleLinks<'_> {
    fn for_each_link(&mut self, e: u32, active: &[bool], f: &mut dyn FnMut(u32)) {
        for_each_triangle(self.gp, e, |x| active[x as usize], |x, y| {
            f(x);
            f(y);
        });
    }
}

/// Maximal triangle-connected edge sets with `κ ≥ k`.
pub fn extract_k_nuclei(gp: &ProjectedGraph, result: &NucleusEdgeResult, k: u64) -> Result<Vec<Vec<ProjectedEdgeId>>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let active: Vec<bool> = result.kappa.iter().map(|&x| x >= k).collect();
    Ok(components(&active, &mut TriangleLinks { gp }))
}

/// Nested (2,3)-nuclei; each node is profiled as the bipartite subgraph
/// induced by the endpoints of its projected edges.
pub fn nucleus23_hierarchy(g: &BipartiteGraph, gp: &ProjectedGraph, result: &NucleusEdgeResult) -> NucleusTree {
    let raw = sweep(&result.kappa, &mut TriangleLinks { gp });
    assemble(NodeKind::Nucleus23, raw, None, |members| {
        let mut vertices: Vec<u32> = members
            .iter()
            .flat_map(|&e| {
                let (a, b) = gp.edge_endpoints(e);
                [a, b]
            })
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut marks = vec![false; g.v_count()];
        g.induced_profile_with(&vertices, &mut marks)
    })
}
