//! Maximal butterfly-connected k-tips / k-wings and the nesting forest
//! built from them.
//!
//! The forest is built by a sweep over decreasing levels with a
//! disjoint-set forest. Entities with value `k` are activated together;
//! each one is united with the active entities it is linked to (sharing a
//! butterfly, a triangle, or a projected edge, depending on the kind).
//! Every class that changed during the level becomes a node with that `k`,
//! and the nodes of the classes it absorbed become its children. A class
//! that does not change keeps its node, so unary chains never appear and a
//! node's `k` is the highest level at which its member set is a class.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::butterfly::{for_each_butterfly_of_edge, PartnerCounter};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::{BipartiteGraph, EdgeId, Profile, VertexId};
use crate::tip::TipResult;
use crate::wing::WingResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Tip,
    Wing,
    Core,
    FracCore,
    Nucleus23,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Tip => "tip",
            NodeKind::Wing => "wing",
            NodeKind::Core => "core",
            NodeKind::FracCore => "frac-core",
            NodeKind::Nucleus23 => "nucleus23",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NucleusNode {
    pub id: usize,
    /// Level of the node. For fractional cores this is the 1-based rank of
    /// `threshold` among the distinct positive values.
    pub k: u64,
    /// Real-valued level, fractional cores only.
    pub threshold: Option<f64>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Members whose deepest node is this one. Entity ids are primary
    /// vertices (tip, core, frac-core), bipartite edges (wing) or projected
    /// edges (nucleus23).
    pub own: Vec<u32>,
    pub profile: Profile,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NucleusTree {
    pub kind: NodeKind,
    pub nodes: Vec<NucleusNode>,
    pub roots: Vec<usize>,
}

impl NucleusTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// All members of the subtree rooted at `id`, ascending.
    pub fn members(&self, id: usize) -> Vec<u32> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            out.extend_from_slice(&self.nodes[n].own);
            stack.extend_from_slice(&self.nodes[n].children);
        }
        out.sort_unstable();
        out
    }

    /// Member sets of the classes at level `k`: for each node whose level is
    /// at least `k` while its parent's is below, that node's members. Sorted
    /// by smallest member.
    pub fn classes_at(&self, k: u64) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self
            .nodes
            .iter()
            .filter(|n| n.k >= k && n.parent.is_none_or(|p| self.nodes[p].k < k))
            .map(|n| self.members(n.id))
            .collect();
        out.sort();
        out
    }

    /// Node ids from `id` up to its root.
    pub fn ancestors(&self, id: usize) -> Vec<usize> {
        let mut chain = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            chain.push(p);
            cur = p;
        }
        chain
    }
}

/// Supplies the links of an entity to already-active entities.
pub(crate) trait Links {
    fn for_each_link(&mut self, entity: u32, active: &[bool], f: &mut dyn FnMut(u32));
}

/// Node skeleton produced by the sweep, before profiles are attached.
pub(crate) struct RawNode {
    pub k: u64,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub own: Vec<u32>,
}

/// Decreasing-level union-find sweep. Entities with value 0 are skipped.
pub(crate) fn sweep(values: &[u64], links: &mut dyn Links) -> Vec<RawNode> {
    let n = values.len();
    let mut order: Vec<u32> = (0..n as u32).filter(|&e| values[e as usize] > 0).collect();
    order.sort_by_key(|&e| (std::cmp::Reverse(values[e as usize]), e));

    let mut dsu = DisjointSets::new(n);
    let mut active = vec![false; n];
    // Per class root: its node while unchanged, or the nodes it absorbed
    // since it last changed.
    let mut clean_node: Vec<Option<usize>> = vec![None; n];
    let mut pending: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut nodes: Vec<RawNode> = Vec::new();

    let mut start = 0;
    while start < order.len() {
        let k = values[order[start] as usize];
        let end = start + order[start..].partition_point(|&e| values[e as usize] == k);
        let group = &order[start..end];

        for &e in group {
            active[e as usize] = true;
        }
        for &e in group {
            let mut partners = Vec::new();
            links.for_each_link(e, &active, &mut |x| partners.push(x));
            for x in partners {
                let (ra, rb) = (dsu.find(e), dsu.find(x));
                if ra == rb {
                    continue;
                }
                let mut absorbed = take_contribution(&mut clean_node, &mut pending, ra);
                absorbed.extend(take_contribution(&mut clean_node, &mut pending, rb));
                let (root, _) = dsu.union(ra, rb).expect("distinct roots");
                pending[root as usize] = absorbed;
                clean_node[root as usize] = None;
            }
        }

        // Group members by class, keeping first-seen order of classes.
        let mut roots: Vec<u32> = Vec::new();
        let mut own_by_root: Vec<Vec<u32>> = Vec::new();
        let mut slot_of: HashMap<u32, usize> = HashMap::new();
        for &e in group {
            let r = dsu.find(e);
            let slot = *slot_of.entry(r).or_insert_with(|| {
                roots.push(r);
                own_by_root.push(Vec::new());
                roots.len() - 1
            });
            own_by_root[slot].push(e);
        }
        // Classes changed by a union but with no new member of their own
        // cannot exist: every union involves an entity of this group.
        for (r, own) in roots.into_iter().zip(own_by_root) {
            let id = nodes.len();
            let children = std::mem::take(&mut pending[r as usize]);
            for &c in &children {
                nodes[c].parent = Some(id);
            }
            nodes.push(RawNode {
                k,
                parent: None,
                children,
                own,
            });
            clean_node[r as usize] = Some(id);
        }
        start = end;
    }
    nodes
}

fn take_contribution(clean: &mut [Option<usize>], pending: &mut [Vec<usize>], root: u32) -> Vec<usize> {
    match clean[root as usize].take() {
        Some(node) => vec![node],
        None => std::mem::take(&mut pending[root as usize]),
    }
}

/// Attaches profiles (computed per node, possibly in parallel) and builds
/// the tree.
pub(crate) fn assemble(
    kind: NodeKind,
    raw: Vec<RawNode>,
    thresholds: Option<&[f64]>,
    profile: impl Fn(&[u32]) -> Profile + Sync + Send,
) -> NucleusTree {
    let mut nodes: Vec<NucleusNode> = raw
        .into_iter()
        .enumerate()
        .map(|(id, r)| NucleusNode {
            id,
            k: r.k,
            threshold: thresholds.map(|t| t[r.k as usize - 1]),
            parent: r.parent,
            children: r.children,
            own: r.own,
            profile: Profile::default(),
        })
        .collect();
    let roots = nodes.iter().filter(|n| n.parent.is_none()).map(|n| n.id).collect();
    let mut tree = NucleusTree { kind, nodes, roots };

    let profiles = exec::map_indexed(Exec::default(), tree.len(), || (), |_, id| {
        profile(&tree.members(id))
    });
    nodes = std::mem::take(&mut tree.nodes);
    for (node, p) in nodes.iter_mut().zip(profiles) {
        node.profile = p;
    }
    tree.nodes = nodes;
    tree
}

pub(crate) struct TipLinks<'a> {
    pub g: &'a BipartiteGraph,
    pub counter: PartnerCounter,
}

impl Links for TipLinks<'_> {
    fn for_each_link(&mut self, u: u32, active: &[bool], f: &mut dyn FnMut(u32)) {
        self.counter.for_each_partner(self.g, u, |x| active[x as usize], |x, common| {
            if common >= 2 {
                f(x)
            }
        });
    }
}

pub(crate) struct WingLinks<'a> {
    pub g: &'a BipartiteGraph,
}

impl Links for WingLinks<'_> {
    fn for_each_link(&mut self, e: u32, active: &[bool], f: &mut dyn FnMut(u32)) {
        for_each_butterfly_of_edge(self.g, e, |x| active[x as usize], |companions| {
            for c in companions {
                f(c)
            }
        });
    }
}

/// Breadth-first classes of `active` entities under `links`, each sorted,
/// ordered by smallest member.
pub(crate) fn components(active: &[bool], links: &mut dyn Links) -> Vec<Vec<u32>> {
    let mut seen = vec![false; active.len()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..active.len() {
        if !active[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start as u32);
        let mut class = Vec::new();
        while let Some(x) = queue.pop_front() {
            class.push(x);
            links.for_each_link(x, active, &mut |y| {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            });
        }
        class.sort_unstable();
        out.push(class);
    }
    out
}

/// Maximal k-tips: classes of primary vertices with `θ ≥ k`, two vertices
/// linked when they share at least two secondary neighbors.
pub fn extract_k_tips(g: &BipartiteGraph, tips: &TipResult, k: u64) -> Result<Vec<Vec<VertexId>>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let active: Vec<bool> = tips.theta.iter().map(|&t| t >= k).collect();
    let mut links = TipLinks {
        g,
        counter: PartnerCounter::new(g.u_count()),
    };
    Ok(components(&active, &mut links))
}

/// Maximal k-wings: classes of edges with `ψ ≥ k`, two edges linked when a
/// butterfly made of such edges contains both.
pub fn extract_k_wings(g: &BipartiteGraph, wings: &WingResult, k: u64) -> Result<Vec<Vec<EdgeId>>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let active: Vec<bool> = wings.psi.iter().map(|&p| p >= k).collect();
    Ok(components(&active, &mut WingLinks { g }))
}

/// A finished decomposition to organize into a [`NucleusTree`].
#[derive(Clone, Copy, Debug)]
pub enum Decomposition<'a> {
    Tip(&'a TipResult),
    Wing(&'a WingResult),
}

pub fn build_hierarchy(g: &BipartiteGraph, result: Decomposition<'_>) -> NucleusTree {
    match result {
        Decomposition::Tip(tips) => {
            let mut links = TipLinks {
                g,
                counter: PartnerCounter::new(g.u_count()),
            };
            let raw = sweep(&tips.theta, &mut links);
            assemble(NodeKind::Tip, raw, None, |members| {
                let mut marks = vec![false; g.v_count()];
                g.induced_profile_with(members, &mut marks)
            })
        }
        Decomposition::Wing(wings) => {
            let raw = sweep(&wings.psi, &mut WingLinks { g });
            assemble(NodeKind::Wing, raw, None, |members| g.edge_set_profile(members))
        }
    }
}

/// One row of the profile table.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRecord {
    pub node_id: usize,
    pub parent_id: Option<usize>,
    pub kind: NodeKind,
    pub k: u64,
    pub threshold: Option<f64>,
    pub u_size: usize,
    pub v_size: usize,
    pub edges: usize,
    pub density: f64,
}

pub fn subgraph_profiles(tree: &NucleusTree) -> Vec<ProfileRecord> {
    tree.nodes
        .iter()
        .map(|n| ProfileRecord {
            node_id: n.id,
            parent_id: n.parent,
            kind: tree.kind,
            k: n.k,
            threshold: n.threshold,
            u_size: n.profile.u_size,
            v_size: n.profile.v_size,
            edges: n.profile.edges,
            density: n.profile.density,
        })
        .collect()
}
