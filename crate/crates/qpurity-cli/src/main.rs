//! `qpurity` — command-line reports, φ scans, figure data files, and Monte
//! Carlo experiment emulation for the two-qubit family ρ(θ,p).
//!
//! Angles are radians throughout (pass `--degrees` to supply inputs in
//! degrees; output is always radians). θ is the Bloch-sphere aperture of the
//! family; a laboratory wave-plate half-angle θ_L corresponds to θ = 2θ_L.
//!
//! Exit codes: 0 success, 2 usage error, 3 verification failure, 4 I/O error.

mod commands;
mod config;
mod table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "qpurity",
    version,
    about = "Conditional-purity and correlation calculations for the two-qubit mixture of \
             |θθ⟩ and |−θ−θ⟩ with weights p, 1−p",
    after_help = "Angles are radians unless --degrees is given; outputs are always radians. \
                  Exit codes: 0 ok, 2 usage, 3 verification failure, 4 I/O."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every closed-form measure of one family state
    Report {
        #[command(flatten)]
        params: ParamArgs,
        /// Cross-check the closed forms against grid+refinement optimizers
        /// and dense matrix recomputation; any mismatch exits 3
        #[arg(long)]
        verify: bool,
    },
    /// Tabulate measurement-angle-dependent quantities over a φ grid
    Scan {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Emit the data files behind one of the standard figures
    Figure {
        /// Which figure's data to emit
        which: FigureId,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the finite-count emulation pipeline and summarize estimator errors
    Experiment {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the oracle cross-checks alone; exits 3 on any mismatch
    Verify {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    /// Family aperture θ ∈ [0, π] (radians unless --degrees)
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Mixture weight p ∈ [0, 1]
    #[arg(long)]
    p: Option<f64>,
    /// First measurement angle of the φ grid
    #[arg(long = "phi-start", allow_negative_numbers = true)]
    phi_start: Option<f64>,
    /// Last measurement angle of the φ grid (inclusive)
    #[arg(long = "phi-stop", allow_negative_numbers = true)]
    phi_stop: Option<f64>,
    /// Number of φ grid points (≥ 2)
    #[arg(long = "phi-count")]
    phi_count: Option<usize>,
    /// Shots per measurement setting in Monte Carlo runs
    #[arg(long)]
    counts: Option<u64>,
    /// Base RNG seed; equal seeds give byte-identical outputs
    #[arg(long)]
    seed: Option<u64>,
    /// Output format for tabular data
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output file (scan, experiment) or directory (figure); stdout/cwd when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Interpret --theta/--phi-start/--phi-stop (and their config-file
    /// counterparts) as degrees
    #[arg(long)]
    degrees: bool,
    /// Plain key=value config file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum FigureId {
    /// Conditional weights p'± over φ at θ=π/3, p ∈ {0.5, 0.7}
    Fig1,
    /// θ scan of optima: P_cond_max, discord, I2_min, both optimal angles
    Fig2,
    /// Conditional purities over φ, analytic + Monte Carlo points
    Fig4,
    /// Discord and deficit over φ, analytic + Monte Carlo points
    Fig5,
}

/// A failure carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Io(m) => m,
        }
    }
}

pub type CliResult = Result<(), CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap's own exit codes: 0 for --help/--version, 2 for usage errors.
        Err(e) => e.exit(),
    };

    let outcome = match cli.command {
        Command::Report { params, verify } => {
            RunConfig::resolve(&params).and_then(|cfg| commands::report::run(&cfg, verify))
        }
        Command::Scan { params } => {
            RunConfig::resolve(&params).and_then(|cfg| commands::scan::run(&cfg))
        }
        Command::Figure { which, params } => {
            RunConfig::resolve(&params).and_then(|cfg| commands::figure::run(which, &cfg))
        }
        Command::Experiment { params } => {
            RunConfig::resolve(&params).and_then(|cfg| commands::experiment::run(&cfg))
        }
        Command::Verify { params } => {
            RunConfig::resolve(&params).and_then(|cfg| commands::verify::run(&cfg))
        }
    };

    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
