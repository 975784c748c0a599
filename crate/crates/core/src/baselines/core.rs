use crate::graph::{BipartiteGraph, VertexId};
use crate::hierarchy::{assemble, sweep, Links, NodeKind, NucleusTree};
use crate::projection::ProjectedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreResult {
    pub core: Vec<u64>,
    pub peel_order: Vec<VertexId>,
}

/// Linear-time bucket peeling (Batagelj–Zaversnik). Weights, if any, are
/// ignored.
pub fn core_decompose(gp: &ProjectedGraph) -> CoreResult {
    let n = gp.vertex_count();
    let mut deg: Vec<usize> = (0..n as VertexId).map(|a| gp.degree(a)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = first position of degree-d vertices in `vert`.
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0 as VertexId; n];
    for a in 0..n {
        pos[a] = bin[deg[a]];
        vert[pos[a]] = a as VertexId;
        bin[deg[a]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let a = vert[i] as usize;
        for &b in gp.neighbors(a as VertexId) {
            let b = b as usize;
            if deg[b] > deg[a] {
                let db = deg[b];
                let pb = pos[b];
                let pw = bin[db];
                let w = vert[pw] as usize;
                if b != w {
                    pos[b] = pw;
                    vert[pb] = w as VertexId;
                    pos[w] = pb;
                    vert[pw] = b as VertexId;
                }
                bin[db] += 1;
                deg[b] -= 1;
            }
        }
    }

    CoreResult {
        core: deg.into_iter().map(|d| d as u64).collect(),
        peel_order: vert,
    }
}

pub(crate) struct ProjectedLinks<'a> {
    pub gp: &'a ProjectedGraph,
}

impl Links for ProjectedLinks<'_> {
    fn for_each_link(&mut self, a: u32, active: &[bool], f: &mut dyn FnMut(u32)) {
        for &b in self.gp.neighbors(a) {
            if active[b as usize] {
                f(b)
            }
        }
    }
}

/// Nested connected k-cores, profiled as induced bipartite subgraphs of `g`.
pub fn core_hierarchy(g: &BipartiteGraph, gp: &ProjectedGraph, cores: &CoreResult) -> NucleusTree {
    let raw = sweep(&cores.core, &mut ProjectedLinks { gp });
    assemble(NodeKind::Core, raw, None, |members| {
        let mut marks = vec![false; g.v_count()];
        g.induced_profile_with(members, &mut marks)
    })
}
