//! `poset-coho`: integral cohomology of finite graded posets from JSON input.
//!
//! Every command prints one JSON report on stdout. Exit codes: 0 success,
//! 1 semantic failure (the report carries the witness), 2 I/O or parse error.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "poset-coho", version, about = "Integral cohomology of finite graded posets")]
struct Cli {
    /// Emit compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Emit indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Add wall-clock time to the report (the output is then no longer byte-stable).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a poset, complex, Morse, Coxeter, functor or family file.
    Validate {
        path: PathBuf,
        /// Poset the functor or family file refers to.
        #[arg(long)]
        poset: Option<PathBuf>,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Cohomology with constant integer coefficients, or higher limits of a functor.
    Cohomology {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Functor file; computes its higher limits instead of constant coefficients.
        #[arg(long)]
        coefficients: Option<PathBuf>,
        /// With --coefficients: build the functor sequence from the given
        /// free functor, checking only the per-level restriction isomorphisms.
        #[arg(long, requires = "coefficients")]
        unchecked: bool,
        /// Upper bound on the number of chains used by the oracle.
        #[arg(long, default_value_t = poset_cohomology::functor::DEFAULT_CHAIN_CAP)]
        chain_cap: usize,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Check a global covering family and build the reduced complex.
    Reduce {
        path: PathBuf,
        /// Global covering family file (`{"K": {...}}`).
        family: PathBuf,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Classify a discrete Morse function and reduce along its family.
    Morse { path: PathBuf },
    /// Build the Coxeter complex of a finite Coxeter system and its family.
    Coxeter {
        path: PathBuf,
        /// Cap on group order and cell count (default from POSET_COHO_MAX_CELLS or 100000).
        #[arg(long)]
        max_cells: Option<usize>,
    },
    /// Compare the three cohomology methods on seeded random complexes.
    Selfcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 25)]
        max_cells: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

/// Options describing how the input poset and its local family are obtained.
#[derive(Args, Debug, Clone, Default)]
struct SpaceArgs {
    /// Translate degrees so the minimum is zero before validating.
    #[arg(long)]
    shift_degrees: bool,
    /// Local covering family file (`{"J": {...}}`); defaults to the
    /// standard family of a simplex-like poset.
    #[arg(long)]
    local_family: Option<PathBuf>,
    /// Comma-separated vertex ids fixing the simplex-like vertex order.
    #[arg(long, value_delimiter = ',')]
    vertex_order: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Functor sequence when a local family is available, the oracle otherwise.
    Auto,
    Sequence,
    Simplicial,
    Oracle,
}

/// Why a command did not succeed.
#[derive(Debug)]
enum Failure {
    /// Unreadable file, malformed JSON or an input of the wrong kind.
    Input(String),
    /// Well-formed input violating a mathematical hypothesis.
    Semantic(Value),
}

/// A finished report and whether every check in it passed.
struct Outcome {
    report: Value,
    ok: bool,
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Validate { path, poset, space } => commands::validate(path, poset.as_deref(), space),
        Command::Cohomology { path, method, coefficients, unchecked, chain_cap, space } => {
            commands::cohomology(path, *method, coefficients.as_deref(), *unchecked, *chain_cap, space)
        }
        Command::Reduce { path, family, space } => commands::reduce(path, family, space),
        Command::Morse { path } => commands::morse(path),
        Command::Coxeter { path, max_cells } => commands::coxeter(path, *max_cells),
        Command::Selfcheck { seed, count, max_cells, max_dim } => {
            Ok(commands::selfcheck(*seed, *count, *max_cells, *max_dim))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli.command);
    let (mut report, code) = match result {
        Ok(Outcome { report, ok }) => (report, if ok { 0 } else { 1 }),
        Err(Failure::Semantic(report)) => (report, 1),
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    if cli.timing {
        if let Value::Object(map) = &mut report {
            map.insert("timing_ms".into(), Value::from(start.elapsed().as_secs_f64() * 1000.0));
        }
    }
    let text = if cli.pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) }
        .expect("reports are plain JSON values");
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if code == 1 {
        if let Some(msg) = report.get("error").and_then(Value::as_str) {
            eprintln!("error: {msg}");
        }
    }
    ExitCode::from(code)
}
