use std::path::PathBuf;
use std::process::ExitCode;

use bipeel::Exec;
use bipeel_cli::fetch::{self, HttpSource};
use bipeel_cli::{run, Algorithm, CliError, RunConfig, SideArg};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bipeel", version, about = "Butterfly counting and k-tip / k-wing peeling for bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the butterfly count as `butterflies=<N>`.
    Count(InputArgs),
    /// Tip decomposition of the primary side.
    Tip(RunArgs),
    /// Wing decomposition of the edges.
    Wing(RunArgs),
    /// k-core decomposition of the primary projection.
    Core(RunArgs),
    /// Fractional k-core of the weighted primary projection.
    #[command(name = "frac-core")]
    FracCore(RunArgs),
    /// (2,3)-nucleus decomposition of the primary projection.
    Nucleus23(RunArgs),
    /// Run an algorithm and print its nesting tree.
    Hierarchy {
        #[arg(long, value_enum)]
        algo: Algorithm,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Download a known dataset into the local cache.
    Fetch {
        /// Dataset name; `--list` shows the registry.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Whitespace-separated edge list, one `left right` pair per line.
    #[arg(required_unless_present = "dataset")]
    input: Option<PathBuf>,
    /// Read a previously fetched dataset instead of a file.
    #[arg(long, conflicts_with = "input")]
    dataset: Option<String>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Which column holds the primary vertices.
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    primary_side: SideArg,
    /// Run the data-parallel loops on one thread.
    #[arg(long)]
    sequential: bool,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
    /// Write per-phase wall times.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 0.0)]
    min_density: f64,
    #[arg(long, default_value_t = 0)]
    min_u: usize,
    #[arg(long, default_value_t = 0)]
    min_v: usize,
    /// Write member lists of every reported subgraph.
    #[arg(long)]
    members: bool,
}

impl InputArgs {
    fn config(self, algorithm: Algorithm) -> Result<RunConfig, CliError> {
        let input = match (self.input, self.dataset) {
            (Some(path), _) => path,
            (None, Some(name)) => {
                let d = fetch::lookup(&name)?;
                let dir = self.cache_dir.unwrap_or_else(fetch::default_cache_dir);
                match fetch::cached(d, &dir)? {
                    Some(hit) => hit.path,
                    None => {
                        return Err(CliError::Usage(format!("dataset '{name}' is not cached; run `bipeel fetch {name}`")))
                    }
                }
            }
            (None, None) => unreachable!("clap requires one of input or --dataset"),
        };
        let mut c = RunConfig::new(input, algorithm);
        c.primary_side = self.primary_side.into();
        c.output_dir = self.output_dir;
        c.emit_timings = self.timings;
        c.exec = if self.sequential { Exec::Sequential } else { Exec::default() };
        Ok(c)
    }
}

impl RunArgs {
    fn config(self, algorithm: Algorithm) -> Result<RunConfig, CliError> {
        let mut c = self.input.config(algorithm)?;
        c.min_density = self.min_density;
        c.min_u = self.min_u;
        c.min_v = self.min_v;
        c.emit_members = self.members;
        Ok(c)
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    let (config, tree) = match command {
        Command::Fetch { name, list, cache_dir } => {
            if list {
                for d in fetch::REGISTRY {
                    println!("{}\t{}\t{}", d.name, d.description, fetch::archive_url(d));
                }
                return Ok(());
            }
            let name = name.expect("clap requires a name without --list");
            let dir = cache_dir.unwrap_or_else(fetch::default_cache_dir);
            let got = fetch::fetch_dataset(&name, &dir, &HttpSource::default())?;
            let how = if got.cached { "cached" } else { "downloaded" };
            println!("{how}\t{}\tsha256={}", got.path.display(), got.sha256);
            return Ok(());
        }
        Command::Count(a) => (a.config(Algorithm::Count)?, false),
        Command::Tip(a) => (a.config(Algorithm::Tip)?, false),
        Command::Wing(a) => (a.config(Algorithm::Wing)?, false),
        Command::Core(a) => (a.config(Algorithm::Core)?, false),
        Command::FracCore(a) => (a.config(Algorithm::FracCore)?, false),
        Command::Nucleus23(a) => (a.config(Algorithm::Nucleus23)?, false),
        Command::Hierarchy { algo, run } => {
            if algo == Algorithm::Count {
                return Err(CliError::Usage("count has no hierarchy".into()));
            }
            (run.config(algo)?, true)
        }
    };
    let mut config = config;
    config.print_tree = tree;
    let summary = run(&config)?;
    if config.algorithm == Algorithm::Count {
        println!("butterflies={}", summary.butterflies.unwrap_or(0));
    } else if let Some(text) = summary.tree_text {
        print!("{text}");
    } else {
        if let Some(n) = summary.butterflies {
            eprintln!("butterflies: {n}");
        }
        eprintln!("nodes: {}, reported: {}", summary.nodes, summary.profile_rows);
    }
    for f in &summary.files {
        eprintln!("wrote {}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
