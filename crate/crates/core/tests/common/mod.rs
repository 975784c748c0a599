//! Brute-force oracles. Everything here works from adjacency matrices and
//! explicit enumeration; nothing calls into the counting or peeling code
//! under test.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use bipeel::graph::{BipartiteGraph, EdgeId, VertexId};
use bipeel::projection::ProjectedGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_graph(seed: u64, max_u: usize, max_v: usize, p: f64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nu = rng.gen_range(2..=max_u);
    let nv = rng.gen_range(2..=max_v);
    sized_graph(&mut rng, nu, nv, p)
}

/// Random graph with exactly `nu x nv` sides.
pub fn fixed_graph(seed: u64, nu: usize, nv: usize, p: f64) -> BipartiteGraph {
    sized_graph(&mut ChaCha8Rng::seed_from_u64(seed), nu, nv, p)
}

fn sized_graph(rng: &mut ChaCha8Rng, nu: usize, nv: usize, p: f64) -> BipartiteGraph {
    let mut edges = Vec::new();
    for u in 0..nu as VertexId {
        for v in 0..nv as VertexId {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    BipartiteGraph::from_edges(nu, nv, &edges).unwrap()
}

/// The acceptance regime: `count` graphs cycling through edge
/// probabilities 0.2 / 0.4 / 0.6.
pub fn random_suite(count: usize, max_side: usize, seed_base: u64) -> Vec<(u64, f64, BipartiteGraph)> {
    const PROBS: [f64; 3] = [0.2, 0.4, 0.6];
    (0..count)
        .map(|i| {
            let p = PROBS[i % 3];
            let seed = seed_base + i as u64;
            (seed, p, random_graph(seed, max_side, max_side, p))
        })
        .collect()
}

pub fn matrix(g: &BipartiteGraph) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; g.v_count()]; g.u_count()];
    for (u, v) in g.edges() {
        m[u as usize][v as usize] = true;
    }
    m
}

/// A butterfly as `(u1, u2, v1, v2)` with `u1 < u2`, `v1 < v2`.
pub type Butterfly = (usize, usize, usize, usize);

/// Every candidate quadruple from `C(|U|,2) * C(|V|,2)`, kept when all four
/// cells are set.
pub fn all_butterflies(g: &BipartiteGraph) -> Vec<Butterfly> {
    let m = matrix(g);
    let (nu, nv) = (g.u_count(), g.v_count());
    let mut out = Vec::new();
    for u1 in 0..nu {
        for u2 in u1 + 1..nu {
            for v1 in 0..nv {
                for v2 in v1 + 1..nv {
                    if m[u1][v1] && m[u1][v2] && m[u2][v1] && m[u2][v2] {
                        out.push((u1, u2, v1, v2));
                    }
                }
            }
        }
    }
    out
}

pub fn butterfly_edges(g: &BipartiteGraph, b: Butterfly) -> [EdgeId; 4] {
    let (u1, u2, v1, v2) = b;
    let id = |u: usize, v: usize| g.edge_id(u as VertexId, v as VertexId).unwrap();
    [id(u1, v1), id(u1, v2), id(u2, v1), id(u2, v2)]
}

pub fn vertex_counts(g: &BipartiteGraph) -> Vec<u64> {
    let mut c = vec![0; g.u_count()];
    for (u1, u2, _, _) in all_butterflies(g) {
        c[u1] += 1;
        c[u2] += 1;
    }
    c
}

pub fn edge_counts(g: &BipartiteGraph) -> Vec<u64> {
    let mut c = vec![0; g.edge_count()];
    for b in all_butterflies(g) {
        for e in butterfly_edges(g, b) {
            c[e as usize] += 1;
        }
    }
    c
}

/// Largest subset of primary vertices in which each has at least `k`
/// butterflies (counted inside the subset), by repeated deletion.
pub fn surviving_vertices(g: &BipartiteGraph, bfs: &[Butterfly], k: u64) -> Vec<bool> {
    let mut alive = vec![true; g.u_count()];
    loop {
        let mut count = vec![0u64; g.u_count()];
        for &(u1, u2, _, _) in bfs {
            if alive[u1] && alive[u2] {
                count[u1] += 1;
                count[u2] += 1;
            }
        }
        let mut changed = false;
        for u in 0..g.u_count() {
            if alive[u] && count[u] < k {
                alive[u] = false;
                changed = true;
            }
        }
        if !changed {
            return alive;
        }
    }
}

pub fn surviving_edges(g: &BipartiteGraph, bfs: &[Butterfly], k: u64) -> Vec<bool> {
    let mut alive = vec![true; g.edge_count()];
    let quads: Vec<[EdgeId; 4]> = bfs.iter().map(|&b| butterfly_edges(g, b)).collect();
    loop {
        let mut count = vec![0u64; g.edge_count()];
        for q in &quads {
            if q.iter().all(|&e| alive[e as usize]) {
                for &e in q {
                    count[e as usize] += 1;
                }
            }
        }
        let mut changed = false;
        for e in 0..g.edge_count() {
            if alive[e] && count[e] < k {
                alive[e] = false;
                changed = true;
            }
        }
        if !changed {
            return alive;
        }
    }
}

/// Tip numbers by sweeping `k` upward over the deletion oracle.
pub fn tip_numbers(g: &BipartiteGraph) -> Vec<u64> {
    let bfs = all_butterflies(g);
    let mut theta = vec![0; g.u_count()];
    for k in 1.. {
        let alive = surviving_vertices(g, &bfs, k);
        if !alive.iter().any(|&a| a) {
            break;
        }
        for (u, &a) in alive.iter().enumerate() {
            if a {
                theta[u] = k;
            }
        }
    }
    theta
}

pub fn wing_numbers(g: &BipartiteGraph) -> Vec<u64> {
    let bfs = all_butterflies(g);
    let mut psi = vec![0; g.edge_count()];
    for k in 1.. {
        let alive = surviving_edges(g, &bfs, k);
        if !alive.iter().any(|&a| a) {
            break;
        }
        for (e, &a) in alive.iter().enumerate() {
            if a {
                psi[e] = k;
            }
        }
    }
    psi
}

/// Connected classes of `alive` items, where `pairs` lists the items that
/// co-occur in some motif (all of whose members are alive).
fn classes(alive: &[bool], groups: &[Vec<usize>]) -> Vec<Vec<u32>> {
    let n = alive.len();
    let mut adj = vec![BTreeSet::new(); n];
    for grp in groups {
        if grp.iter().all(|&x| alive[x]) {
            for &a in grp {
                for &b in grp {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        let mut comp = vec![];
        let mut q = VecDeque::from([s]);
        seen[s] = true;
        while let Some(x) = q.pop_front() {
            comp.push(x as u32);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

pub fn k_tips(g: &BipartiteGraph, k: u64) -> Vec<Vec<u32>> {
    let bfs = all_butterflies(g);
    let alive = surviving_vertices(g, &bfs, k);
    let groups: Vec<Vec<usize>> = bfs.iter().map(|&(u1, u2, _, _)| vec![u1, u2]).collect();
    classes(&alive, &groups)
}

pub fn k_wings(g: &BipartiteGraph, k: u64) -> Vec<Vec<u32>> {
    let bfs = all_butterflies(g);
    let alive = surviving_edges(g, &bfs, k);
    let groups: Vec<Vec<usize>> = bfs
        .iter()
        .map(|&b| butterfly_edges(g, b).iter().map(|&e| e as usize).collect())
        .collect();
    classes(&alive, &groups)
}

/// Butterflies of the subgraph induced by a primary vertex set (the
/// secondary side is all their neighbors, so only the primary pair matters).
pub fn tip_bullets_hold(g: &BipartiteGraph, set: &[u32], k: u64) -> Result<(), String> {
    let inside: BTreeSet<usize> = set.iter().map(|&u| u as usize).collect();
    let bfs: Vec<Butterfly> = all_butterflies(g)
        .into_iter()
        .filter(|b| inside.contains(&b.0) && inside.contains(&b.1))
        .collect();
    // 1: per-vertex lower bound.
    for &u in &inside {
        let c = bfs.iter().filter(|b| b.0 == u || b.1 == u).count() as u64;
        if c < k {
            return Err(format!("vertex {u} has {c} < {k} butterflies"));
        }
    }
    // 2: connected by series of butterflies.
    let mut alive = vec![false; g.u_count()];
    for &u in &inside {
        alive[u] = true;
    }
    let groups: Vec<Vec<usize>> = bfs.iter().map(|&(a, b, _, _)| vec![a, b]).collect();
    if classes(&alive, &groups).len() != 1 {
        return Err("set is not butterfly-connected".into());
    }
    // 3: maximality. Any k-tip containing the set lies inside the deletion
    // survivors and is butterfly-connected, hence inside this component.
    let survivors = surviving_vertices(g, &all_butterflies(g), k);
    let all_groups: Vec<Vec<usize>> = all_butterflies(g).iter().map(|&(a, b, _, _)| vec![a, b]).collect();
    let comps = classes(&survivors, &all_groups);
    let first = set[0];
    let comp = comps.iter().find(|c| c.contains(&first)).ok_or("not a survivor")?;
    if comp.as_slice() != set {
        return Err("set is not maximal".into());
    }
    // Single-vertex growth: adding any excluded butterfly partner leaves it
    // under the bound.
    for x in 0..g.u_count() {
        if inside.contains(&x) {
            continue;
        }
        let c = all_butterflies(g)
            .into_iter()
            .filter(|b| (b.0 == x && inside.contains(&b.1)) || (b.1 == x && inside.contains(&b.0)))
            .count() as u64;
        if c > 0 && c >= k {
            return Err(format!("adding {x} keeps every vertex at >= {k}"));
        }
    }
    Ok(())
}

pub fn wing_bullets_hold(g: &BipartiteGraph, set: &[u32], k: u64) -> Result<(), String> {
    let inside: BTreeSet<u32> = set.iter().copied().collect();
    let all: Vec<[EdgeId; 4]> = all_butterflies(g).into_iter().map(|b| butterfly_edges(g, b)).collect();
    let internal: Vec<&[EdgeId; 4]> = all.iter().filter(|q| q.iter().all(|e| inside.contains(e))).collect();
    for &e in &inside {
        let c = internal.iter().filter(|q| q.contains(&e)).count() as u64;
        if c < k {
            return Err(format!("edge {e} has {c} < {k} butterflies"));
        }
    }
    let mut alive = vec![false; g.edge_count()];
    for &e in &inside {
        alive[e as usize] = true;
    }
    let groups: Vec<Vec<usize>> = internal.iter().map(|q| q.iter().map(|&e| e as usize).collect()).collect();
    if classes(&alive, &groups).len() != 1 {
        return Err("set is not butterfly-connected".into());
    }
    let survivors = surviving_edges(g, &all_butterflies(g), k);
    let all_groups: Vec<Vec<usize>> = all.iter().map(|q| q.iter().map(|&e| e as usize).collect()).collect();
    let comps = classes(&survivors, &all_groups);
    let comp = comps.iter().find(|c| c.contains(&set[0])).ok_or("not a survivor")?;
    if comp.as_slice() != set {
        return Err("set is not maximal".into());
    }
    for x in 0..g.edge_count() as u32 {
        if inside.contains(&x) {
            continue;
        }
        let c = all
            .iter()
            .filter(|q| q.contains(&x) && q.iter().all(|e| *e == x || inside.contains(e)))
            .count() as u64;
        if c > 0 && c >= k {
            return Err(format!("adding edge {x} keeps every edge at >= {k}"));
        }
    }
    Ok(())
}

/// `{u1, u2}` pairs with a common neighbor, weighted by `sum 1/deg(v)` over
/// the shared neighbors.
pub fn projection_weights(g: &BipartiteGraph) -> HashMap<(u32, u32), f64> {
    let m = matrix(g);
    let mut out = HashMap::new();
    for a in 0..g.u_count() {
        for b in a + 1..g.u_count() {
            let mut w = 0.0;
            let mut shared = false;
            for v in 0..g.v_count() {
                if m[a][v] && m[b][v] {
                    shared = true;
                    let deg = (0..g.u_count()).filter(|&x| m[x][v]).count();
                    w += 1.0 / deg as f64;
                }
            }
            if shared {
                out.insert((a as u32, b as u32), w);
            }
        }
    }
    out
}

pub fn random_projected(seed: u64, n: usize, p: f64) -> ProjectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    ProjectedGraph::from_edges(n, &edges).unwrap()
}

pub fn random_weighted(seed: u64, n: usize, p: f64) -> ProjectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p) {
                // Quarter steps keep every sum exact in binary floating point.
                let w = rng.gen_range(1..=8) as f64 * 0.25;
                edges.push((a, b, w));
            }
        }
    }
    ProjectedGraph::from_weighted_edges(n, &edges).unwrap()
}

fn projected_edges(gp: &ProjectedGraph) -> Vec<(usize, usize)> {
    (0..gp.edge_count() as u32)
        .map(|e| {
            let (a, b) = gp.edge_endpoints(e);
            (a as usize, b as usize)
        })
        .collect()
}

/// Core numbers by repeated deletion of vertices with degree below `k`.
pub fn core_numbers(gp: &ProjectedGraph) -> Vec<u64> {
    let n = gp.vertex_count();
    let edges = projected_edges(gp);
    let mut core = vec![0; n];
    for k in 1.. {
        let mut alive = vec![true; n];
        loop {
            let mut deg = vec![0u64; n];
            for &(a, b) in &edges {
                if alive[a] && alive[b] {
                    deg[a] += 1;
                    deg[b] += 1;
                }
            }
            let doomed: Vec<usize> = (0..n).filter(|&a| alive[a] && deg[a] < k).collect();
            if doomed.is_empty() {
                break;
            }
            for a in doomed {
                alive[a] = false;
            }
        }
        if !alive.iter().any(|&a| a) {
            break;
        }
        for a in 0..n {
            if alive[a] {
                core[a] = k;
            }
        }
    }
    core
}

pub fn triangles(gp: &ProjectedGraph) -> Vec<[u32; 3]> {
    let n = gp.vertex_count();
    let has = |a: usize, b: usize| gp.edge_id(a as u32, b as u32);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let (Some(x), Some(y), Some(z)) = (has(a, b), has(a, c), has(b, c)) {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Truss-style values: repeated deletion of edges in fewer than `k`
/// surviving triangles.
pub fn triangle_peel_numbers(gp: &ProjectedGraph) -> Vec<u64> {
    let m = gp.edge_count();
    let tris = triangles(gp);
    let mut kappa = vec![0; m];
    for k in 1.. {
        let mut alive = vec![true; m];
        loop {
            let mut c = vec![0u64; m];
            for t in &tris {
                if t.iter().all(|&e| alive[e as usize]) {
                    for &e in t {
                        c[e as usize] += 1;
                    }
                }
            }
            let doomed: Vec<usize> = (0..m).filter(|&e| alive[e] && c[e] < k).collect();
            if doomed.is_empty() {
                break;
            }
            for e in doomed {
                alive[e] = false;
            }
        }
        if !alive.iter().any(|&a| a) {
            break;
        }
        for e in 0..m {
            if alive[e] {
                kappa[e] = k;
            }
        }
    }
    kappa
}

/// Fractional core values by a threshold sweep: starting from the whole
/// graph, the survivors at threshold `t` all have value at least the
/// smallest weighted degree `m` among them; the next threshold keeps only
/// vertices that survive strictly above `m`.
pub fn fractional_values(gp: &ProjectedGraph) -> Vec<f64> {
    let n = gp.vertex_count();
    let weighted: Vec<(usize, usize, f64)> = (0..gp.edge_count() as u32)
        .map(|e| {
            let (a, b) = gp.edge_endpoints(e);
            (a as usize, b as usize, gp.weight(a, b).unwrap())
        })
        .collect();
    let wdeg = |alive: &[bool]| {
        let mut d = vec![0.0; n];
        for &(a, b, w) in &weighted {
            if alive[a] && alive[b] {
                d[a] += w;
                d[b] += w;
            }
        }
        d
    };
    // Maximal subgraph with every weighted degree strictly above `t`.
    let above = |t: f64| {
        let mut alive = vec![true; n];
        loop {
            let d = wdeg(&alive);
            let doomed: Vec<usize> = (0..n).filter(|&a| alive[a] && d[a] <= t + 1e-12).collect();
            if doomed.is_empty() {
                return alive;
            }
            for a in doomed {
                alive[a] = false;
            }
        }
    };

    let mut value = vec![0.0; n];
    let mut alive = vec![true; n];
    loop {
        let d = wdeg(&alive);
        let Some(m) = (0..n).filter(|&a| alive[a]).map(|a| d[a]).min_by(f64::total_cmp) else {
            break;
        };
        for a in 0..n {
            if alive[a] {
                value[a] = m.max(0.0);
            }
        }
        alive = above(m);
    }
    value
}

/// Classes of the `alive` projected edges under triangle adjacency, as
/// sorted vertex sets.
pub fn triangle_classes(gp: &ProjectedGraph, alive: &[bool]) -> Vec<Vec<u32>> {
    let groups: Vec<Vec<usize>> = triangles(gp)
        .iter()
        .map(|t| t.iter().map(|&e| e as usize).collect())
        .collect();
    edge_classes_to_vertices(gp, classes(alive, &groups))
}

/// Classes of the `alive` projected edges under plain vertex sharing (the
/// truss view of connectivity), as sorted vertex sets.
pub fn vertex_shared_classes(gp: &ProjectedGraph, alive: &[bool]) -> Vec<Vec<u32>> {
    let m = gp.edge_count();
    let mut groups = Vec::new();
    for x in 0..m {
        for y in x + 1..m {
            let (a, b) = gp.edge_endpoints(x as u32);
            let (c, d) = gp.edge_endpoints(y as u32);
            if a == c || a == d || b == c || b == d {
                groups.push(vec![x, y]);
            }
        }
    }
    edge_classes_to_vertices(gp, classes(alive, &groups))
}

pub fn edge_classes_to_vertices(gp: &ProjectedGraph, cls: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = cls
        .into_iter()
        .map(|c| {
            let mut vs: Vec<u32> = c
                .iter()
                .flat_map(|&e| {
                    let (a, b) = gp.edge_endpoints(e);
                    [a, b]
                })
                .collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        })
        .collect();
    out.sort();
    out
}
