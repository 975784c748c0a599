use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use bipeel::baselines::{
    core_decompose, core_hierarchy, fractional_core_decompose, fractional_core_hierarchy, nucleus23_decompose,
    nucleus23_hierarchy,
};
use bipeel::butterfly::{count_per_edge_with, count_per_vertex_with};
use bipeel::hierarchy::{build_hierarchy, subgraph_profiles, Decomposition, NodeKind, NucleusTree};
use bipeel::projection::{project_unweighted_with, project_weighted_with, ProjectedGraph};
use bipeel::report::{write_histogram, write_profiles_csv, ProfileFilter};
use bipeel::tip::tip_decompose;
use bipeel::wing::wing_decompose;
use bipeel::{load_bipartite, BipartiteGraph};

use crate::config::{Algorithm, RunConfig};
use crate::error::CliError;

#[derive(Debug, Default)]
pub struct RunSummary {
    pub butterflies: Option<u64>,
    pub nodes: usize,
    pub profile_rows: usize,
    pub files: Vec<PathBuf>,
    /// Indented nesting tree, filled when `print_tree` is set.
    pub tree_text: Option<String>,
}

struct Timings(Vec<(&'static str, f64)>);

impl Timings {
    fn time<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let started = Instant::now();
        let out = f();
        self.0.push((phase, started.elapsed().as_secs_f64()));
        out
    }
}

/// Output sink that remembers every file it produced.
struct Outputs<'a> {
    dir: &'a Path,
    files: Vec<PathBuf>,
}

impl Outputs<'_> {
    fn write(&mut self, name: &str, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), CliError> {
        let path = self.dir.join(name);
        let fail = |source| CliError::Output { path: path.clone(), source };
        let mut w = BufWriter::new(File::create(&path).map_err(fail)?);
        body(&mut w).and_then(|_| w.flush()).map_err(fail)?;
        self.files.push(path);
        Ok(())
    }
}

fn core_err(e: bipeel::Error) -> io::Error {
    match e {
        bipeel::Error::Io(e) => e,
        other => io::Error::other(other.to_string()),
    }
}

pub fn load(config: &RunConfig) -> Result<BipartiteGraph, CliError> {
    let input_err = |source| CliError::Input { path: config.input.clone(), source };
    let file = File::open(&config.input).map_err(|e| input_err(e.into()))?;
    let loaded = load_bipartite(BufReader::new(file), config.primary_side).map_err(input_err)?;
    Ok(loaded.graph)
}

/// Entity labels, per tree kind, used for member listings.
fn member_line(g: &BipartiteGraph, gp: Option<&ProjectedGraph>, kind: NodeKind, m: u32) -> String {
    match kind {
        NodeKind::Tip | NodeKind::Core | NodeKind::FracCore => g.label_u(m).to_string(),
        NodeKind::Wing => {
            let (u, v) = g.edge_endpoints(m);
            format!("{}\t{}", g.label_u(u), g.label_v(v))
        }
        NodeKind::Nucleus23 => {
            let (a, b) = gp.expect("nucleus trees come with a projection").edge_endpoints(m);
            format!("{}\t{}", g.label_u(a), g.label_u(b))
        }
    }
}

fn render_tree(tree: &NucleusTree) -> String {
    let mut out = String::new();
    let mut stack: Vec<(usize, usize)> = tree.roots.iter().rev().map(|&r| (r, 0)).collect();
    while let Some((id, depth)) = stack.pop() {
        let n = &tree.nodes[id];
        let level = match n.threshold {
            Some(t) => format!("{t:.6}"),
            None => n.k.to_string(),
        };
        out.push_str(&format!(
            "{:indent$}[{}] k={} |U|={} |V|={} |E|={} density={:.6}\n",
            "",
            n.id,
            level,
            n.profile.u_size,
            n.profile.v_size,
            n.profile.edges,
            n.profile.density,
            indent = depth * 2
        ));
        stack.extend(n.children.iter().rev().map(|&c| (c, depth + 1)));
    }
    out
}

fn write_tree_outputs(
    out: &mut Outputs<'_>,
    config: &RunConfig,
    g: &BipartiteGraph,
    gp: Option<&ProjectedGraph>,
    tree: &NucleusTree,
    summary: &mut RunSummary,
) -> Result<(), CliError> {
    let stem = config.algorithm.file_stem();
    let records = subgraph_profiles(tree);
    let filter = ProfileFilter { min_density: config.min_density, min_u: config.min_u, min_v: config.min_v };
    let mut rows = 0;
    out.write(&format!("{stem}_profiles.csv"), |w| {
        rows = write_profiles_csv(&records, &filter, w).map_err(core_err)?;
        Ok(())
    })?;
    out.write(&format!("{stem}_hierarchy.csv"), |w| {
        write_profiles_csv(&records, &ProfileFilter::default(), w).map_err(core_err)?;
        Ok(())
    })?;
    if config.emit_members {
        let dir = out.dir.join(format!("{stem}_members"));
        fs::create_dir_all(&dir).map_err(|source| CliError::Output { path: dir.clone(), source })?;
        let mut sub = Outputs { dir: &dir, files: Vec::new() };
        for r in records.iter().filter(|r| filter.accepts(r)) {
            sub.write(&format!("{}.tsv", r.node_id), |w| {
                for m in tree.members(r.node_id) {
                    writeln!(w, "{}", member_line(g, gp, tree.kind, m))?;
                }
                Ok(())
            })?;
        }
        out.files.extend(sub.files);
    }
    summary.nodes = tree.len();
    summary.profile_rows = rows;
    if config.print_tree {
        summary.tree_text = Some(render_tree(tree));
    }
    Ok(())
}

/// Runs one algorithm end to end and writes its artifacts.
pub fn run(config: &RunConfig) -> Result<RunSummary, CliError> {
    config.validate()?;
    let mut timings = Timings(Vec::new());
    let started = Instant::now();
    let g = timings.time("load", || load(config))?;
    let mut summary = RunSummary::default();
    let dir = config.output_dir.as_path();
    let needs_dir = config.algorithm != Algorithm::Count || config.emit_timings;
    if needs_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Output { path: dir.to_path_buf(), source })?;
    }
    let mut out = Outputs { dir, files: Vec::new() };
    let stem = config.algorithm.file_stem();
    let exec = config.exec;

    match config.algorithm {
        Algorithm::Count => {
            let (by_vertex, _) = timings.time("count", || count_per_vertex_with(&g, exec))?;
            let (by_edge, _) = timings.time("count_edges", || count_per_edge_with(&g, exec))?;
            if by_vertex.total != by_edge.total {
                return Err(CliError::Runtime(format!(
                    "counting paths disagree: per-vertex {} vs per-edge {}",
                    by_vertex.total, by_edge.total
                )));
            }
            summary.butterflies = Some(by_vertex.total);
        }
        Algorithm::Tip => {
            let (beta, _) = timings.time("count", || count_per_vertex_with(&g, exec))?;
            summary.butterflies = Some(beta.total);
            let tips = timings.time("peel", || tip_decompose(&g, &beta))?;
            let tree = timings.time("hierarchy", || build_hierarchy(&g, Decomposition::Tip(&tips)));
            out.write("tip_values.tsv", |w| {
                for (u, t) in tips.theta.iter().enumerate() {
                    writeln!(w, "{}\t{t}", g.label_u(u as u32))?;
                }
                Ok(())
            })?;
            out.write("tip_histogram.tsv", |w| write_histogram(&tips.theta, "theta", w).map_err(core_err))?;
            write_tree_outputs(&mut out, config, &g, None, &tree, &mut summary)?;
        }
        Algorithm::Wing => {
            let (beta, _) = timings.time("count", || count_per_edge_with(&g, exec))?;
            summary.butterflies = Some(beta.total);
            let wings = timings.time("peel", || wing_decompose(&g, &beta))?;
            let tree = timings.time("hierarchy", || build_hierarchy(&g, Decomposition::Wing(&wings)));
            out.write("wing_values.tsv", |w| {
                for (e, p) in wings.psi.iter().enumerate() {
                    let (u, v) = g.edge_endpoints(e as u32);
                    writeln!(w, "{}\t{}\t{p}", g.label_u(u), g.label_v(v))?;
                }
                Ok(())
            })?;
            out.write("wing_histogram.tsv", |w| write_histogram(&wings.psi, "psi", w).map_err(core_err))?;
            write_tree_outputs(&mut out, config, &g, None, &tree, &mut summary)?;
        }
        Algorithm::Core => {
            let gp = timings.time("count", || project_unweighted_with(&g, exec))?;
            let cores = timings.time("peel", || core_decompose(&gp));
            let tree = timings.time("hierarchy", || core_hierarchy(&g, &gp, &cores));
            out.write("core_values.tsv", |w| {
                for (u, c) in cores.core.iter().enumerate() {
                    writeln!(w, "{}\t{c}", g.label_u(u as u32))?;
                }
                Ok(())
            })?;
            out.write("core_histogram.tsv", |w| write_histogram(&cores.core, "core", w).map_err(core_err))?;
            write_tree_outputs(&mut out, config, &g, Some(&gp), &tree, &mut summary)?;
        }
        Algorithm::FracCore => {
            let gwp = timings.time("count", || project_weighted_with(&g, exec))?;
            let frac = timings.time("peel", || fractional_core_decompose(&gwp))?;
            let tree = timings.time("hierarchy", || fractional_core_hierarchy(&g, &gwp, &frac));
            out.write("frac_core_values.tsv", |w| {
                for (u, x) in frac.value.iter().enumerate() {
                    writeln!(w, "{}\t{x:.6}", g.label_u(u as u32))?;
                }
                Ok(())
            })?;
            write_tree_outputs(&mut out, config, &g, Some(&gwp), &tree, &mut summary)?;
        }
        Algorithm::Nucleus23 => {
            let gp = timings.time("count", || project_unweighted_with(&g, exec))?;
            let nuc = timings.time("peel", || nucleus23_decompose(&gp));
            let tree = timings.time("hierarchy", || nucleus23_hierarchy(&g, &gp, &nuc));
            out.write("nucleus23_values.tsv", |w| {
                for (e, k) in nuc.kappa.iter().enumerate() {
                    let (a, b) = gp.edge_endpoints(e as u32);
                    writeln!(w, "{}\t{}\t{k}", g.label_u(a), g.label_u(b))?;
                }
                Ok(())
            })?;
            out.write("nucleus23_histogram.tsv", |w| write_histogram(&nuc.kappa, "kappa", w).map_err(core_err))?;
            write_tree_outputs(&mut out, config, &g, Some(&gp), &tree, &mut summary)?;
        }
    }

    if config.emit_timings {
        timings.0.push(("total", started.elapsed().as_secs_f64()));
        out.write(&format!("{stem}_timings.tsv"), |w| {
            writeln!(w, "phase\tseconds")?;
            for (phase, secs) in &timings.0 {
                writeln!(w, "{phase}\t{secs:.3}")?;
            }
            Ok(())
        })?;
    }
    summary.files = out.files;
    Ok(summary)
}
