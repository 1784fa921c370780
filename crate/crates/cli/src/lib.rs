//! Batch front-end: analyze sentences, print `C` versus `D` curves, tabulate
//! expected crossings for tree families, and run the exhaustive checks.

mod analyze;
mod curve;
mod output;
mod simulate;
mod verify;

pub use analyze::cmd_analyze;
pub use curve::cmd_curve;
pub use simulate::cmd_simulate;
pub use verify::{cmd_verify, run_checks, CheckRow};

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
/// `verify` found a counterexample.
pub const EXIT_FINDINGS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "depcross", version, about = "Crossings and dependency lengths in syntactic dependency trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One row per sentence: observed C and D, predictions, errors, p-values.
    Analyze(AnalyzeArgs),
    /// Mean C and E1[C] for every reachable D of one sentence.
    Curve(CurveArgs),
    /// Expected crossings of linear, quasi-star and random labeled trees.
    Simulate(SimulateArgs),
    /// Exhaustive checks of degree and crossing-probability identities.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// `.conllu`/`.conll` files as CoNLL-U, anything else as edge lists.
    Auto,
    Conllu,
    Edgelist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Input files; standard input when none are given.
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
    /// Report unreadable sentences on stderr and continue.
    #[arg(long)]
    pub skip_bad: bool,
    /// Remove tokens attached with the `punct` relation (CoNLL-U only).
    #[arg(long)]
    pub drop_punct: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    /// Largest n for which all n! arrangements are enumerated (4..=12).
    #[arg(long, default_value_t = depcross::ensembles::DEFAULT_MAX_EXHAUSTIVE_N)]
    pub max_exhaustive_n: usize,
    /// Random arrangements drawn above the exhaustive bound.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, default_value_t = depcross::statistics::DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Emit::Csv)]
    pub emit: Emit,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    /// Sentence id to plot; the first sentence when omitted.
    #[arg(long)]
    pub sentence: Option<String>,
    /// Refuse to sample: fail when n exceeds the exhaustive bound.
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 4)]
    pub n_min: usize,
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
    /// Random labeled trees drawn per n; 0 skips sampling.
    #[arg(long, default_value_t = 0)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Largest tree size enumerated (at most 8).
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Largest n for the crossing-probability identities.
    #[arg(long, default_value_t = 50)]
    pub identity_n_max: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, stdout, stderr),
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{e}");
            EXIT_CONFIG
        }
        Err(e) => {
            let _ = write!(stdout, "{e}");
            EXIT_OK
        }
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Analyze(args) => cmd_analyze(&args, stdout, stderr),
        Command::Curve(args) => cmd_curve(&args, stdout, stderr),
        Command::Simulate(args) => cmd_simulate(&args, stdout, stderr),
        Command::Verify(args) => cmd_verify(&args, stdout, stderr),
    }
}
