//! Butterfly ((2,2)-biclique) counting and enumeration.
//!
//! Per-vertex counts follow the wedge-aggregation scheme: for each primary
//! vertex `u`, every `d` reached through a shared secondary neighbor is
//! counted `c_d` times and `u` sits in `Σ_d C(c_d, 2)` butterflies.
//! Per-edge counts visit every butterfly once, at its smallest primary
//! vertex, by intersecting the neighborhoods of each secondary pair.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::{BipartiteGraph, EdgeId, VertexId};

/// Lists at or below this length are probed by binary search into the
/// longer list rather than merged.
const SHORT_LIST: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountKind {
    PerVertex,
    PerEdge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ButterflyCounts {
    pub kind: CountKind,
    /// Indexed by primary vertex id or edge id, depending on `kind`.
    pub values: Vec<u64>,
    /// Number of butterflies in the whole graph.
    pub total: u64,
}

impl ButterflyCounts {
    /// How many times each butterfly is counted across `values`.
    pub fn multiplicity(&self) -> u64 {
        match self.kind {
            CountKind::PerVertex => 2,
            CountKind::PerEdge => 4,
        }
    }

    /// Checks `Σ values == multiplicity · total`.
    pub fn is_consistent(&self) -> bool {
        let sum = self
            .values
            .iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x));
        sum.is_some() && Some(sum.unwrap()) == self.total.checked_mul(self.multiplicity())
    }
}

/// Work counters, used to check the complexity bounds in tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CountStats {
    /// Secondary-list entries read while aggregating wedges.
    pub neighbor_accesses: u64,
    /// Sorted-list intersections performed.
    pub intersections: u64,
}

#[inline]
pub(crate) fn choose2(c: u64) -> u64 {
    // c <= u32::MAX in practice, so this cannot overflow.
    c * c.saturating_sub(1) / 2
}

/// Calls `f(i, j)` for every `a[i] == b[j]`, in ascending order.
pub(crate) fn intersect_sorted(a: &[VertexId], b: &[VertexId], mut f: impl FnMut(usize, usize)) {
    if a.is_empty() || b.is_empty() || a[a.len() - 1] < b[0] || b[b.len() - 1] < a[0] {
        return;
    }
    let a_short = a.len() <= b.len();
    let (short, long) = if a_short { (a, b) } else { (b, a) };
    if short.len() <= SHORT_LIST && long.len() > SHORT_LIST {
        let mut lo = 0;
        for (i, x) in short.iter().enumerate() {
            match long[lo..].binary_search(x) {
                Ok(off) => {
                    let j = lo + off;
                    if a_short {
                        f(i, j)
                    } else {
                        f(j, i)
                    }
                    lo = j + 1;
                }
                Err(off) => lo += off,
            }
            if lo == long.len() {
                break;
            }
        }
        return;
    }
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(i, j);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Reusable dense counter over primary vertices: common-neighbor counts
/// between one vertex and every other.
pub(crate) struct PartnerCounter {
    common: Vec<u32>,
    touched: Vec<VertexId>,
}

impl PartnerCounter {
    pub(crate) fn new(u_count: usize) -> Self {
        PartnerCounter {
            common: vec![0; u_count],
            touched: Vec::new(),
        }
    }

    /// Fills the counter with `|N(u) ∩ N(x)|` for every `x != u` with
    /// `active(x)`, then hands `(x, common)` pairs to `f` in ascending `x`.
    /// Returns the number of neighbor accesses.
    pub(crate) fn for_each_partner(
        &mut self,
        g: &BipartiteGraph,
        u: VertexId,
        active: impl Fn(VertexId) -> bool,
        mut f: impl FnMut(VertexId, u64),
    ) -> u64 {
        let mut accesses = 0u64;
        for &v in g.neighbors_u(u) {
            let partners = g.neighbors_v(v);
            accesses += partners.len() as u64;
            for &x in partners {
                if x == u || !active(x) {
                    continue;
                }
                let slot = &mut self.common[x as usize];
                if *slot == 0 {
                    self.touched.push(x);
                }
                *slot += 1;
            }
        }
        self.touched.sort_unstable();
        for &x in &self.touched {
            f(x, self.common[x as usize] as u64);
            self.common[x as usize] = 0;
        }
        self.touched.clear();
        accesses
    }
}

/// Per-primary-vertex butterfly counts using the default execution policy.
pub fn count_per_vertex(g: &BipartiteGraph) -> Result<ButterflyCounts> {
    count_per_vertex_with(g, Exec::default()).map(|(c, _)| c)
}

pub fn count_per_vertex_with(g: &BipartiteGraph, exec: Exec) -> Result<(ButterflyCounts, CountStats)> {
    let n = g.u_count();
    let per_vertex = exec::map_indexed(exec, n, || PartnerCounter::new(n), |pc, u| {
        let mut beta = Some(0u64);
        let accesses = pc.for_each_partner(g, u as VertexId, |_| true, |_, c| {
            beta = beta.and_then(|b| b.checked_add(choose2(c)));
        });
        (beta, accesses)
    });

    let mut values = Vec::with_capacity(n);
    let mut stats = CountStats::default();
    let mut sum = 0u64;
    for (beta, accesses) in per_vertex {
        let beta = beta.ok_or(Error::CountOverflow)?;
        sum = sum.checked_add(beta).ok_or(Error::CountOverflow)?;
        stats.neighbor_accesses += accesses;
        values.push(beta);
    }
    debug_assert_eq!(sum % 2, 0);
    Ok((
        ButterflyCounts {
            kind: CountKind::PerVertex,
            values,
            total: sum / 2,
        },
        stats,
    ))
}

/// Per-edge butterfly counts using the default execution policy.
pub fn count_per_edge(g: &BipartiteGraph) -> Result<ButterflyCounts> {
    count_per_edge_with(g, Exec::default()).map(|(c, _)| c)
}

/// Per-edge counts. Primary vertices are processed in ascending id; for
/// each pair `v1 < v2` in `N(u)` the common neighbors `i > u` close a
/// butterfly `(u, i, v1, v2)`, whose four edges are incremented.
pub fn count_per_edge_with(g: &BipartiteGraph, exec: Exec) -> Result<(ButterflyCounts, CountStats)> {
    let counters: Vec<AtomicU64> = (0..g.edge_count()).map(|_| AtomicU64::new(0)).collect();

    let per_vertex = exec::map_indexed(exec, g.u_count(), || (), |_, u| {
        let u = u as VertexId;
        let nbrs = g.neighbors_u(u);
        let first_edge = g.edge_range_u(u).start;
        let mut own = vec![0u64; nbrs.len()];
        let mut found = 0u64;
        let mut intersections = 0u64;
        for i in 0..nbrs.len() {
            let v1 = nbrs[i];
            let l1 = g.neighbors_v(v1);
            let s1 = l1.partition_point(|&x| x <= u);
            let ids1 = &g.edge_ids_v(v1)[s1..];
            for j in i + 1..nbrs.len() {
                let v2 = nbrs[j];
                let l2 = g.neighbors_v(v2);
                let s2 = l2.partition_point(|&x| x <= u);
                let ids2 = &g.edge_ids_v(v2)[s2..];
                intersections += 1;
                let mut closed = 0u64;
                intersect_sorted(&l1[s1..], &l2[s2..], |a, b| {
                    closed += 1;
                    counters[ids1[a] as usize].fetch_add(1, Ordering::Relaxed);
                    counters[ids2[b] as usize].fetch_add(1, Ordering::Relaxed);
                });
                own[i] += closed;
                own[j] += closed;
                found += closed;
            }
        }
        for (k, c) in own.into_iter().enumerate() {
            if c > 0 {
                counters[first_edge as usize + k].fetch_add(c, Ordering::Relaxed);
            }
        }
        (found, intersections)
    });

    let mut total = 0u64;
    let mut stats = CountStats::default();
    for (found, intersections) in per_vertex {
        total = total.checked_add(found).ok_or(Error::CountOverflow)?;
        stats.intersections += intersections;
    }
    // Every per-edge value is at most `total` and they sum to 4 * total, so
    // this single check rules out wrapped counters.
    total.checked_mul(4).ok_or(Error::CountOverflow)?;

    let values = counters.into_iter().map(AtomicU64::into_inner).collect();
    Ok((
        ButterflyCounts {
            kind: CountKind::PerEdge,
            values,
            total,
        },
        stats,
    ))
}

/// For each active partner `x != u`, the number of butterflies `u` shares
/// with `x`: `C(|N(u) ∩ N(x)|, 2)`. Partners sharing none are omitted.
pub fn butterflies_of_vertex(
    g: &BipartiteGraph,
    u: VertexId,
    active: impl Fn(VertexId) -> bool,
) -> Vec<(VertexId, u64)> {
    let mut out = Vec::new();
    PartnerCounter::new(g.u_count()).for_each_partner(g, u, active, |x, c| {
        if c >= 2 {
            out.push((x, choose2(c)));
        }
    });
    out
}

/// Enumerates butterflies containing `e` whose three other edges are all
/// active, passing the companions `[(w, v), (u, v'), (w, v')]` to `f`.
pub(crate) fn for_each_butterfly_of_edge(
    g: &BipartiteGraph,
    e: EdgeId,
    active: impl Fn(EdgeId) -> bool,
    mut f: impl FnMut([EdgeId; 3]),
) {
    let (u, v) = g.edge_endpoints(e);
    let u_nbrs = g.neighbors_u(u);
    let u_first = g.edge_range_u(u).start;
    for (&w, &wv) in g.neighbors_v(v).iter().zip(g.edge_ids_v(v)) {
        if w == u || !active(wv) {
            continue;
        }
        let w_first = g.edge_range_u(w).start;
        intersect_sorted(u_nbrs, g.neighbors_u(w), |iu, iw| {
            if u_nbrs[iu] == v {
                return;
            }
            let uv2 = u_first + iu as EdgeId;
            let wv2 = w_first + iw as EdgeId;
            if active(uv2) && active(wv2) {
                f([wv, uv2, wv2]);
            }
        });
    }
}

/// Every butterfly containing `e` whose companion edges satisfy `active`,
/// each given as its three companion edge ids.
pub fn butterflies_of_edge(g: &BipartiteGraph, e: EdgeId, active: impl Fn(EdgeId) -> bool) -> Vec<[EdgeId; 3]> {
    let mut out = Vec::new();
    for_each_butterfly_of_edge(g, e, active, |b| out.push(b));
    out
}
