use bipeel::baselines::count_triangles_with;
use bipeel::butterfly::{count_per_edge_with, count_per_vertex_with};
use bipeel::projection::{project_unweighted, project_weighted_with};
use bipeel::{BipartiteGraph, Exec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(seed: u64, nu: usize, nv: usize, p: f64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(u32, u32)> = (0..nu as u32)
        .flat_map(|u| (0..nv as u32).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    BipartiteGraph::from_edges(nu, nv, &edges).unwrap()
}

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn inputs() -> Vec<(String, BipartiteGraph)> {
    vec![
        ("400x400_p0.05".into(), random_graph(1, 400, 400, 0.05)),
        ("2000x500_p0.02".into(), random_graph(2, 2000, 500, 0.02)),
    ]
}

fn counting(c: &mut Criterion) {
    for (name, g) in inputs() {
        let mut group = c.benchmark_group(format!("count/{name}"));
        for (label, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new("per_vertex", label), &g, |b, g| {
                b.iter(|| count_per_vertex_with(g, exec).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("per_edge", label), &g, |b, g| {
                b.iter(|| count_per_edge_with(g, exec).unwrap())
            });
        }
        group.finish();
    }
}

fn projection(c: &mut Criterion) {
    for (name, g) in inputs() {
        let mut group = c.benchmark_group(format!("project/{name}"));
        for (label, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new("weighted", label), &g, |b, g| {
                b.iter(|| project_weighted_with(g, exec).unwrap())
            });
        }
        group.finish();
    }
}

fn triangles(c: &mut Criterion) {
    for (name, g) in inputs() {
        let gp = project_unweighted(&g).unwrap();
        let mut group = c.benchmark_group(format!("triangles/{name}"));
        for (label, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new("count", label), &gp, |b, gp| {
                b.iter(|| count_triangles_with(gp, exec))
            });
        }
        group.finish();
    }
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = counting, projection, triangles
}
criterion_main!(benches);
