//! Dense subgraph discovery on bipartite graphs by peeling butterflies.
//!
//! * [`butterfly`] counts (2,2)-bicliques per primary vertex and per edge.
//! * [`tip`] and [`wing`] peel vertices and edges by butterfly support.
//! * [`hierarchy`] extracts the maximal butterfly-connected subgraphs and
//!   nests them into a forest with size/density profiles.
//! * [`projection`] and [`baselines`] provide the one-mode projections and
//!   the k-core, fractional k-core and (2,3)-nucleus comparisons.
//!
//! ```
//! use bipeel::{butterfly, fixtures, tip};
//!
//! let g = fixtures::t3();
//! let beta = butterfly::count_per_vertex(&g).unwrap();
//! let tips = tip::tip_decompose(&g, &beta).unwrap();
//! assert_eq!(tips.theta, vec![2, 3, 3, 3, 3, 2]);
//! ```

pub mod baselines;
pub mod butterfly;
pub mod dsu;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod graph;
pub mod hierarchy;
pub mod projection;
mod queue;
pub mod report;
pub mod tip;
pub mod wing;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{load_bipartite, BipartiteGraph, EdgeId, PrimarySide, Profile, VertexId};
