//! Small named graphs used throughout the tests and the CLI smoke runs.

use crate::graph::{load_bipartite, BipartiteGraph, EdgeId, PrimarySide, VertexId};

/// Two 2x3 bicliques `{B,C}x{1,2,3}` and `{D,E}x{4,5,6}` bridged by `C4`
/// and `D3`, with fringe vertices `A` (on 1, 2) and `F` (on 5, 6).
pub const T3_EDGES: &str = "\
A 1\nA 2\n\
B 1\nB 2\nB 3\n\
C 1\nC 2\nC 3\nC 4\n\
D 3\nD 4\nD 5\nD 6\n\
E 4\nE 5\nE 6\n\
F 5\nF 6\n";

pub fn t3() -> BipartiteGraph {
    from_text(T3_EDGES)
}

pub fn from_text(text: &str) -> BipartiteGraph {
    load_bipartite(text.as_bytes(), PrimarySide::Left)
        .expect("fixture parses")
        .graph
}

/// Complete bipartite graph with `a` primary and `b` secondary vertices.
pub fn biclique(a: usize, b: usize) -> BipartiteGraph {
    let edges: Vec<(VertexId, VertexId)> = (0..a as VertexId)
        .flat_map(|u| (0..b as VertexId).map(move |v| (u, v)))
        .collect();
    BipartiteGraph::from_edges(a, b, &edges).expect("in range")
}

/// Disjoint union of two graphs, primary and secondary ids of `right`
/// shifted past those of `left`.
pub fn disjoint_union(left: &BipartiteGraph, right: &BipartiteGraph) -> BipartiteGraph {
    let (du, dv) = (left.u_count() as VertexId, left.v_count() as VertexId);
    let edges = left
        .edges()
        .chain(right.edges().map(|(u, v)| (u + du, v + dv)))
        .collect();
    let labels_u = (0..left.u_count() + right.u_count()).map(|i| format!("u{i}")).collect();
    let labels_v = (0..left.v_count() + right.v_count()).map(|i| format!("v{i}")).collect();
    BipartiteGraph::with_labels(labels_u, labels_v, edges).expect("in range")
}

pub fn primary(g: &BipartiteGraph, label: &str) -> VertexId {
    g.labels(crate::graph::Side::Primary)
        .iter()
        .position(|l| l == label)
        .unwrap_or_else(|| panic!("no primary vertex {label}")) as VertexId
}

pub fn secondary(g: &BipartiteGraph, label: &str) -> VertexId {
    g.labels(crate::graph::Side::Secondary)
        .iter()
        .position(|l| l == label)
        .unwrap_or_else(|| panic!("no secondary vertex {label}")) as VertexId
}

pub fn edge(g: &BipartiteGraph, u: &str, v: &str) -> EdgeId {
    g.edge_id(primary(g, u), secondary(g, v))
        .unwrap_or_else(|| panic!("no edge {u}{v}"))
}
