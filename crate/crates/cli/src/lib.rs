//! `qdx`: fixture parser, subcommands and the bundled selftest corpus.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod lang;
pub mod selftest;

pub use lang::{parse, Env, ParseError};

pub const EXIT_PARSE: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_MISSING_MODEL: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "qdx", version, about = "Degrees of graded modules and equivariant sum formulas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Highest degree for expansions and truncations.
    #[arg(long, global = true, default_value_t = 20)]
    pub max_degree: usize,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Largest permutation group accepted.
    #[arg(long, global = true, default_value_t = qdx_core::grpcat::DEFAULT_GROUP_BOUND)]
    pub bound: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert series of a module or ideal quotient.
    Hilbert { file: String, name: Option<String> },
    /// Degree and Krull dimension.
    Degree { file: String, name: Option<String> },
    /// Minimal primes, marking those of top dimension.
    Minprimes { file: String, name: Option<String> },
    /// Length of an Artinian module, or local length at a minimal prime.
    Length {
        file: String,
        name: Option<String>,
        /// Minimal prime such as "(x, y)".
        #[arg(long)]
        prime: Option<String>,
    },
    /// Degree against the sum over top-dimensional minimal primes.
    Additivity { file: String, name: Option<String> },
    /// Order, generators and elementary abelian subgroups of a group.
    GroupInfo {
        file: String,
        name: Option<String>,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Quillen pairs and classes of a fixture.
    Quillen {
        file: String,
        fixture: Option<String>,
        /// Also print the subconjugacy relation between classes.
        #[arg(long)]
        graph: bool,
    },
    /// Invariant dimensions of a model's action, against its stored series.
    Invariants { file: String, name: Option<String> },
    /// Randomized W-module checks.
    WmodCheck {
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Both sides of the degree formula for each fixture.
    VerifyMain { file: String, fixture: Option<String> },
    /// Brute-force recomputation of Hilbert functions and dimensions.
    Oracle {
        file: Option<String>,
        name: Option<String>,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Runs the bundled corpus.
    Selftest {
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("missing model: {0}")]
    MissingModel(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(ParseError::Capacity { .. }) | CliError::Capacity(_) => EXIT_CAPACITY,
            CliError::Parse(_) | CliError::Usage(_) => EXIT_PARSE,
            CliError::MissingModel(_) => EXIT_MISSING_MODEL,
            CliError::Failed(_) => EXIT_VERIFY,
        }
    }
}

/// One output record: a human line (or block) and a machine object.
#[derive(Debug, Clone)]
pub struct Record {
    pub human: String,
    pub machine: serde_json::Value,
}

pub struct Outcome {
    pub records: Vec<Record>,
    /// All verifications in the run passed.
    pub ok: bool,
}

pub fn emit(out: &mut dyn Write, format: Format, records: &[Record]) -> std::io::Result<()> {
    for r in records {
        match format {
            Format::Human => writeln!(out, "{}", r.human)?,
            Format::Machine => writeln!(out, "{}", serde_json::to_string(&r.machine).expect("serializable"))?,
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(outcome) => {
            if emit(out, cli.format, &outcome.records).is_err() {
                return EXIT_PARSE;
            }
            if outcome.ok {
                0
            } else {
                EXIT_VERIFY
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}
