//! Command-line front end.
//!
//! Every command prints a human table followed by a `key=value` block.
//! Exit codes: 0 success, 1 mathematical failure (axiom violation,
//! obstruction found, computation aborted), 2 usage or parse errors.

mod commands;
pub mod format;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::builtins::{builtin, corrupt};
use crate::pbw::Presentation;

pub use format::{parse_presentation, print_presentation, FormatError};
pub use report::{parse_keys, Report};

#[derive(Debug, Parser)]
#[command(name = "hopfkit", version, about = "Exact computations in PBW algebras with Hopf structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Built-in presentation (H6, J, L, U_n5, heis3, poly(d), qplane(q), jordan).
    #[arg(long = "builtin", value_name = "NAME")]
    pub builtins: Vec<String>,
    /// Presentation file.
    #[arg(long = "file", value_name = "PATH")]
    pub files: Vec<PathBuf>,
    /// Apply a named corruption to each built-in (e.g. drop-dd-correction).
    #[arg(long)]
    pub corrupt: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Window {
    /// Weight bound W; defaults to 2 * (max generator weight) + 2.
    #[arg(long = "weight-bound", short = 'W')]
    pub weight_bound: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validation, confluence and every Hopf axiom check.
    Check {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        window: Window,
        /// Seed for the randomized coproduct-morphism spot check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random monomial pairs in the spot check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Normal form of an expression.
    Nf {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        expr: String,
    },
    /// Hilbert series, exponent sequence and GK dimension.
    Hilbert {
        #[command(flatten)]
        source: Source,
        #[arg(long, short = 'D', default_value_t = 10)]
        degree: usize,
    },
    /// The truncation A+/(A+)^k and its centre.
    Truncate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        window: Window,
        #[arg(long, short = 'k', default_value_t = 3)]
        power: u32,
    },
    /// Antipode on generators, verified on monomials up to W.
    Antipode {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        window: Window,
    },
    /// Primitive elements of weight at most W.
    Primitives {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        window: Window,
    },
    /// Coradical levels inside the weight window.
    Coradical {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        window: Window,
    },
    /// Signature from the coradical levels.
    Signature {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        window: Window,
    },
    /// Associated graded presentation, optionally after reweighting.
    Gr {
        #[command(flatten)]
        source: Source,
        /// Comma-separated generator weights.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u32>>,
    },
    /// Numeric obstructions to a Hopf structure.
    Obstruct {
        #[command(flatten)]
        source: Source,
        #[arg(long, short = 'D', default_value_t = 10)]
        degree: usize,
    },
    /// Truncations and centres of two presentations, side by side.
    CompareCenters {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        window: Window,
        #[arg(long, short = 'k', default_value_t = 3)]
        power: u32,
    },
    /// Print a built-in presentation in file form.
    DumpBuiltin { name: String },
}

/// Failure of a command, with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Math(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Math(m) => m,
        }
    }
}

pub(crate) fn math(e: impl std::fmt::Display) -> CliError {
    CliError::Math(e.to_string())
}

pub(crate) fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl Source {
    pub fn load(&self) -> Result<Vec<Presentation>, CliError> {
        let mut out = Vec::new();
        for name in &self.builtins {
            let p = builtin(name).map_err(usage)?;
            out.push(match &self.corrupt {
                Some(c) => corrupt(&p, c).map_err(usage)?,
                None => p,
            });
        }
        for path in &self.files {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let mut p = parse_presentation(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            if p.name.is_empty() {
                p.name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
            }
            out.push(p);
        }
        Ok(out)
    }

    pub fn load_one(&self) -> Result<Presentation, CliError> {
        let mut all = self.load()?;
        match all.len() {
            1 => Ok(all.pop().unwrap()),
            0 => Err(usage("give a presentation with --builtin or --file")),
            _ => Err(usage("this command takes exactly one presentation")),
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the text
/// for standard output and the exit code.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    match commands::dispatch(&cli.command) {
        Ok((text, ok)) => (text, if ok { 0 } else { 1 }),
        Err(e) => (format!("error: {}\n", e.message()), e.code()),
    }
}
