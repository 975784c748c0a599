use std::fmt;
use std::path::PathBuf;

use bipeel::{Exec, PrimarySide};
use clap::ValueEnum;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Count,
    Tip,
    Wing,
    Core,
    #[value(name = "frac-core")]
    FracCore,
    Nucleus23,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Count => "count",
            Algorithm::Tip => "tip",
            Algorithm::Wing => "wing",
            Algorithm::Core => "core",
            Algorithm::FracCore => "frac-core",
            Algorithm::Nucleus23 => "nucleus23",
        }
    }

    /// Stem used for output file names.
    pub fn file_stem(self) -> &'static str {
        match self {
            Algorithm::FracCore => "frac_core",
            other => other.name(),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    #[default]
    Left,
    Right,
}

impl From<SideArg> for PrimarySide {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Left => PrimarySide::Left,
            SideArg::Right => PrimarySide::Right,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub primary_side: PrimarySide,
    pub algorithm: Algorithm,
    pub min_density: f64,
    pub min_u: usize,
    pub min_v: usize,
    pub output_dir: PathBuf,
    pub emit_members: bool,
    pub emit_timings: bool,
    /// Also print the indented nesting tree to stdout.
    pub print_tree: bool,
    pub exec: Exec,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, algorithm: Algorithm) -> Self {
        RunConfig {
            input: input.into(),
            primary_side: PrimarySide::Left,
            algorithm,
            min_density: 0.0,
            min_u: 0,
            min_v: 0,
            output_dir: PathBuf::from("."),
            emit_members: false,
            emit_timings: false,
            print_tree: false,
            exec: Exec::default(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(0.0..=1.0).contains(&self.min_density) {
            return Err(CliError::Usage(format!(
                "--min-density must lie in [0, 1], got {}",
                self.min_density
            )));
        }
        Ok(())
    }
}
