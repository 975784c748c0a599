use std::cmp::Reverse;
use std::collections::BinaryHeap;

use ordered_float::OrderedFloat;

use super::core::ProjectedLinks;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, VertexId};
use crate::hierarchy::{assemble, sweep, NodeKind, NucleusTree};
use crate::projection::ProjectedGraph;

#[derive(Clone, Debug, PartialEq)]
pub struct FractionalCoreResult {
    /// Largest `t` such that the vertex lies in a subgraph whose weighted
    /// degrees are all at least `t`.
    pub value: Vec<f64>,
    pub peel_order: Vec<VertexId>,
}

/// Peels by minimum weighted degree. A vertex's value is the running
/// maximum of the minimum weighted degree seen at removal time, which
/// makes the `{value ≥ t}` sets nested and each one the maximal subgraph
/// with all weighted degrees `≥ t`.
///
/// Ties go to the smallest vertex id. Stale heap entries are skipped
/// lazily.
pub fn fractional_core_decompose(gwp: &ProjectedGraph) -> Result<FractionalCoreResult> {
    if !gwp.is_weighted() {
        return Err(Error::InvalidArgument("fractional cores need a weighted projection".into()));
    }
    let n = gwp.vertex_count();
    for a in 0..n as VertexId {
        if let Some(w) = gwp.weights(a).unwrap().iter().find(|&&w| w.is_nan() || w < 0.0) {
            return Err(Error::InvalidArgument(format!("vertex {a} has negative weight {w}")));
        }
    }

    let mut wdeg: Vec<f64> = (0..n as VertexId).map(|a| gwp.weighted_degree(a)).collect();
    let mut heap: BinaryHeap<Reverse<(OrderedFloat<f64>, VertexId)>> = wdeg
        .iter()
        .enumerate()
        .map(|(a, &d)| Reverse((OrderedFloat(d), a as VertexId)))
        .collect();
    let mut removed = vec![false; n];
    let mut value = vec![0.0; n];
    let mut peel_order = Vec::with_capacity(n);
    let mut running = f64::NEG_INFINITY;

    while let Some(Reverse((OrderedFloat(d), a))) = heap.pop() {
        let ai = a as usize;
        if removed[ai] || d != wdeg[ai] {
            continue;
        }
        removed[ai] = true;
        running = running.max(d);
        value[ai] = running.max(0.0);
        peel_order.push(a);
        let weights = gwp.weights(a).unwrap();
        for (&b, &w) in gwp.neighbors(a).iter().zip(weights) {
            let bi = b as usize;
            if !removed[bi] {
                wdeg[bi] -= w;
                heap.push(Reverse((OrderedFloat(wdeg[bi]), b)));
            }
        }
    }

    Ok(FractionalCoreResult { value, peel_order })
}

/// Nested connected fractional cores. Distinct positive values are ranked
/// so the shared level sweep can run on integers; node thresholds carry
/// the real values.
pub fn fractional_core_hierarchy(
    g: &BipartiteGraph,
    gwp: &ProjectedGraph,
    frac: &FractionalCoreResult,
) -> NucleusTree {
    let mut thresholds: Vec<f64> = frac.value.iter().copied().filter(|&v| v > 0.0).collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();
    let ranks: Vec<u64> = frac
        .value
        .iter()
        .map(|&v| {
            if v > 0.0 {
                thresholds.partition_point(|&t| t < v) as u64 + 1
            } else {
                0
            }
        })
        .collect();
    let raw = sweep(&ranks, &mut ProjectedLinks { gp: gwp });
    assemble(NodeKind::FracCore, raw, Some(&thresholds), |members| {
        let mut marks = vec![false; g.v_count()];
        g.induced_profile_with(members, &mut marks)
    })
}
