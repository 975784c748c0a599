//! Immutable bipartite graph in compressed (CSR) form, plus edge-list
//! ingestion and induced subgraphs.
//!
//! Both sides use dense 0-based ids. Edge ids follow the primary-side CSR
//! layout: the edges of `u` are `u_offsets[u]..u_offsets[u + 1]`, in
//! ascending order of the secondary endpoint.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::ops::Range;

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

/// Which column of an edge list holds the primary vertices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PrimarySide {
    #[default]
    Left,
    Right,
}

/// Side of a bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Primary,
    Secondary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    u_offsets: Vec<usize>,
    u_targets: Vec<VertexId>,
    v_offsets: Vec<usize>,
    v_targets: Vec<VertexId>,
    /// Edge id of each entry of `v_targets`.
    v_edge_ids: Vec<EdgeId>,
    /// Primary endpoint of each edge.
    edge_source: Vec<VertexId>,
    labels_u: Vec<String>,
    labels_v: Vec<String>,
}

/// Counters gathered while reading an edge list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub lines: usize,
    pub comments: usize,
    pub raw_edges: usize,
    pub duplicates: usize,
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: BipartiteGraph,
    pub stats: LoadStats,
}

/// Size and density of a bipartite subgraph: `|E| / (|U| * |V|)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Profile {
    pub u_size: usize,
    pub v_size: usize,
    pub edges: usize,
    pub density: f64,
}

impl Profile {
    pub fn new(u_size: usize, v_size: usize, edges: usize) -> Self {
        let cells = u_size as f64 * v_size as f64;
        let density = if cells > 0.0 { edges as f64 / cells } else { 0.0 };
        Profile {
            u_size,
            v_size,
            edges,
            density,
        }
    }
}

impl BipartiteGraph {
    /// Builds a graph from `(primary, secondary)` pairs. Duplicates are
    /// collapsed. Labels default to the decimal ids.
    pub fn from_edges(u_count: usize, v_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let labels_u = (0..u_count).map(|i| i.to_string()).collect();
        let labels_v = (0..v_count).map(|i| i.to_string()).collect();
        Self::with_labels(labels_u, labels_v, edges.to_vec())
    }

    pub fn with_labels(
        labels_u: Vec<String>,
        labels_v: Vec<String>,
        mut edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self> {
        let (u_count, v_count) = (labels_u.len(), labels_v.len());
        if u_count > VertexId::MAX as usize || v_count > VertexId::MAX as usize {
            return Err(Error::InvalidArgument("too many vertices for 32-bit ids".into()));
        }
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u as usize >= u_count || v as usize >= v_count)
        {
            return Err(Error::InvalidArgument(format!(
                "edge ({u}, {v}) out of range for {u_count}x{v_count} graph"
            )));
        }
        edges.sort_unstable();
        edges.dedup();
        if edges.len() > EdgeId::MAX as usize {
            return Err(Error::InvalidArgument("too many edges for 32-bit ids".into()));
        }

        let mut u_offsets = vec![0usize; u_count + 1];
        let mut v_offsets = vec![0usize; v_count + 1];
        for &(u, v) in &edges {
            u_offsets[u as usize + 1] += 1;
            v_offsets[v as usize + 1] += 1;
        }
        for i in 0..u_count {
            u_offsets[i + 1] += u_offsets[i];
        }
        for i in 0..v_count {
            v_offsets[i + 1] += v_offsets[i];
        }

        let u_targets: Vec<VertexId> = edges.iter().map(|&(_, v)| v).collect();
        let edge_source: Vec<VertexId> = edges.iter().map(|&(u, _)| u).collect();

        // Edges are sorted by (u, v), so filling each secondary list in edge
        // order leaves it sorted by u.
        let mut cursor = v_offsets.clone();
        let mut v_targets = vec![0; edges.len()];
        let mut v_edge_ids = vec![0; edges.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            let slot = &mut cursor[v as usize];
            v_targets[*slot] = u;
            v_edge_ids[*slot] = e as EdgeId;
            *slot += 1;
        }

        Ok(BipartiteGraph {
            u_offsets,
            u_targets,
            v_offsets,
            v_targets,
            v_edge_ids,
            edge_source,
            labels_u,
            labels_v,
        })
    }

    pub fn u_count(&self) -> usize {
        self.labels_u.len()
    }

    pub fn v_count(&self) -> usize {
        self.labels_v.len()
    }

    pub fn edge_count(&self) -> usize {
        self.u_targets.len()
    }

    pub fn neighbors_u(&self, u: VertexId) -> &[VertexId] {
        let u = u as usize;
        &self.u_targets[self.u_offsets[u]..self.u_offsets[u + 1]]
    }

    pub fn neighbors_v(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.v_targets[self.v_offsets[v]..self.v_offsets[v + 1]]
    }

    /// Edge ids aligned with [`neighbors_v`](Self::neighbors_v).
    pub fn edge_ids_v(&self, v: VertexId) -> &[EdgeId] {
        let v = v as usize;
        &self.v_edge_ids[self.v_offsets[v]..self.v_offsets[v + 1]]
    }

    /// Edge ids of `u`, aligned with [`neighbors_u`](Self::neighbors_u).
    pub fn edge_range_u(&self, u: VertexId) -> Range<EdgeId> {
        let u = u as usize;
        self.u_offsets[u] as EdgeId..self.u_offsets[u + 1] as EdgeId
    }

    pub fn degree_u(&self, u: VertexId) -> usize {
        let u = u as usize;
        self.u_offsets[u + 1] - self.u_offsets[u]
    }

    pub fn degree_v(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.v_offsets[v + 1] - self.v_offsets[v]
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.edge_source[e as usize], self.u_targets[e as usize])
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let range = self.edge_range_u(u);
        self.neighbors_u(u)
            .binary_search(&v)
            .ok()
            .map(|i| range.start + i as EdgeId)
    }

    pub fn label_u(&self, u: VertexId) -> &str {
        &self.labels_u[u as usize]
    }

    pub fn label_v(&self, v: VertexId) -> &str {
        &self.labels_v[v as usize]
    }

    pub fn labels(&self, side: Side) -> &[String] {
        match side {
            Side::Primary => &self.labels_u,
            Side::Secondary => &self.labels_v,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edge_source.iter().copied().zip(self.u_targets.iter().copied())
    }

    /// Subgraph induced by a set of primary vertices: the secondary side is
    /// every neighbor of a kept vertex and all their edges are kept.
    ///
    /// Kept vertices are renumbered in ascending order of their old ids on
    /// both sides, so relative order and labels are preserved.
    pub fn induced_subgraph(&self, u_set: &[VertexId]) -> BipartiteGraph {
        let mut keep_u = u_set.to_vec();
        keep_u.sort_unstable();
        keep_u.dedup();

        let mut v_map = vec![VertexId::MAX; self.v_count()];
        for &u in &keep_u {
            for &v in self.neighbors_u(u) {
                v_map[v as usize] = 0;
            }
        }
        let mut labels_v = Vec::new();
        for (v, slot) in v_map.iter_mut().enumerate() {
            if *slot == 0 {
                *slot = labels_v.len() as VertexId;
                labels_v.push(self.labels_v[v].clone());
            }
        }

        let labels_u = keep_u.iter().map(|&u| self.labels_u[u as usize].clone()).collect();
        let edges = keep_u
            .iter()
            .enumerate()
            .flat_map(|(new_u, &u)| {
                let v_map = &v_map;
                self.neighbors_u(u)
                    .iter()
                    .map(move |&v| (new_u as VertexId, v_map[v as usize]))
            })
            .collect();
        Self::with_labels(labels_u, labels_v, edges).expect("induced subgraph ids are in range")
    }

    /// Profile of [`induced_subgraph`](Self::induced_subgraph) without
    /// materializing it. `marks` is scratch space of length `v_count`,
    /// all false on entry and on return.
    pub fn induced_profile_with(&self, u_set: &[VertexId], marks: &mut [bool]) -> Profile {
        let mut v_size = 0;
        let mut edges = 0;
        for &u in u_set {
            edges += self.degree_u(u);
            for &v in self.neighbors_u(u) {
                if !marks[v as usize] {
                    marks[v as usize] = true;
                    v_size += 1;
                }
            }
        }
        for &u in u_set {
            for &v in self.neighbors_u(u) {
                marks[v as usize] = false;
            }
        }
        Profile::new(u_set.len(), v_size, edges)
    }

    pub fn induced_profile(&self, u_set: &[VertexId]) -> Profile {
        let mut keep = u_set.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut marks = vec![false; self.v_count()];
        self.induced_profile_with(&keep, &mut marks)
    }

    /// Profile of the subgraph formed by a set of edges.
    pub fn edge_set_profile(&self, edge_set: &[EdgeId]) -> Profile {
        let mut us: Vec<VertexId> = Vec::with_capacity(edge_set.len());
        let mut vs: Vec<VertexId> = Vec::with_capacity(edge_set.len());
        for &e in edge_set {
            let (u, v) = self.edge_endpoints(e);
            us.push(u);
            vs.push(v);
        }
        us.sort_unstable();
        us.dedup();
        vs.sort_unstable();
        vs.dedup();
        let mut distinct = edge_set.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        Profile::new(us.len(), vs.len(), distinct.len())
    }

    pub fn profile(&self) -> Profile {
        Profile::new(self.u_count(), self.v_count(), self.edge_count())
    }

    /// Writes `primary<SP>secondary` lines that reload (with
    /// [`PrimarySide::Left`]) into an identical graph.
    ///
    /// Ids on reload are assigned by first appearance, so the lines are
    /// ordered to introduce vertices on both sides in id order. Such an
    /// order exists for every graph produced by [`load_bipartite`] and the
    /// greedy walk below always finds one. Isolated vertices cannot be
    /// expressed in this format and are dropped.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        let mut emitted = vec![false; self.edge_count()];
        let (mut next_u, mut next_v) = (0usize, 0usize);
        let mut order = Vec::with_capacity(self.edge_count());

        loop {
            while next_u < self.u_count() && self.degree_u(next_u as VertexId) == 0 {
                next_u += 1;
            }
            while next_v < self.v_count() && self.degree_v(next_v as VertexId) == 0 {
                next_v += 1;
            }
            if next_u == self.u_count() || next_v == self.v_count() {
                break;
            }
            let (u, v) = (next_u as VertexId, next_v as VertexId);
            let first_v_of_u = self.neighbors_u(u)[0] as usize;
            let first_u_of_v = self.neighbors_v(v)[0] as usize;
            let e = if first_v_of_u < next_v {
                next_u += 1;
                self.edge_id(u, first_v_of_u as VertexId)
            } else if first_u_of_v < next_u {
                next_v += 1;
                self.edge_id(first_u_of_v as VertexId, v)
            } else if first_v_of_u == next_v {
                next_u += 1;
                next_v += 1;
                self.edge_id(u, v)
            } else {
                // Not reachable from a first-appearance labelling; fall back to
                // plain id order for the rest.
                break;
            };
            let e = e.expect("edge exists by construction");
            emitted[e as usize] = true;
            order.push(e);
        }
        order.extend((0..self.edge_count() as EdgeId).filter(|&e| !emitted[e as usize]));

        for e in order {
            let (u, v) = self.edge_endpoints(e);
            writeln!(out, "{} {}", self.label_u(u), self.label_v(v))?;
        }
        Ok(())
    }

    /// Sidecar label map: `internal_id<TAB>label` per vertex of `side`.
    pub fn write_label_map<W: Write>(&self, side: Side, mut out: W) -> Result<()> {
        for (id, label) in self.labels(side).iter().enumerate() {
            writeln!(out, "{id}\t{label}")?;
        }
        Ok(())
    }
}

/// Reads a whitespace-separated two-column edge list. Blank lines and lines
/// starting with `#` are skipped.
pub fn load_bipartite<R: BufRead>(input: R, primary_side: PrimarySide) -> Result<LoadedGraph> {
    let mut ids_u: HashMap<String, VertexId> = HashMap::new();
    let mut ids_v: HashMap<String, VertexId> = HashMap::new();
    let mut labels_u = Vec::new();
    let mut labels_v = Vec::new();
    let mut edges = Vec::new();
    let mut stats = LoadStats::default();

    fn intern(ids: &mut HashMap<String, VertexId>, labels: &mut Vec<String>, token: &str) -> VertexId {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len() as VertexId;
        ids.insert(token.to_owned(), id);
        labels.push(token.to_owned());
        id
    }

    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        stats.lines += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            stats.comments += 1;
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        let (primary, secondary) = match primary_side {
            PrimarySide::Left => (tokens[0], tokens[1]),
            PrimarySide::Right => (tokens[1], tokens[0]),
        };
        let u = intern(&mut ids_u, &mut labels_u, primary);
        let v = intern(&mut ids_v, &mut labels_v, secondary);
        edges.push((u, v));
    }

    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    stats.raw_edges = edges.len();
    let graph = BipartiteGraph::with_labels(labels_u, labels_v, edges)?;
    stats.duplicates = stats.raw_edges - graph.edge_count();
    Ok(LoadedGraph { graph, stats })
}
