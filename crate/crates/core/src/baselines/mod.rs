//! Comparison decompositions that run on the one-mode projection: k-core,
//! fractional k-core on the weighted projection, and (2,3)-nucleus
//! (triangle) decomposition. Their subgraphs are reported as the bipartite
//! subgraphs induced by the primary vertices they contain.

mod core;
mod fractional;
mod nucleus23;

pub use self::core::{core_decompose, core_hierarchy, CoreResult};
pub use self::fractional::{fractional_core_decompose, fractional_core_hierarchy, FractionalCoreResult};
pub use self::nucleus23::{
    count_triangles, count_triangles_with, extract_k_nuclei, nucleus23_decompose, nucleus23_hierarchy, NucleusEdgeResult,
};

use crate::graph::{BipartiteGraph, Profile, VertexId};

/// Profile of the bipartite subgraph induced by a vertex set found in the
/// projection. An empty set yields an all-zero profile.
pub fn induced_bipartite_from_projection_node(g: &BipartiteGraph, vertices: &[VertexId]) -> Profile {
    g.induced_profile(vertices)
}
