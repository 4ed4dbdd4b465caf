use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pifunc::analysis::identities::IdentityKind;

#[derive(Parser, Debug)]
#[command(
    name = "pifunc",
    version,
    about = "Evaluate and analyse the nested-radical Pi-function"
)]
pub struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Render values with 17 significant digits instead of 8.
    #[arg(long, global = true)]
    pub full: bool,

    /// Write output to this file (CSV for `sweep`, the JSON report otherwise).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the estimate at a fixed depth.
    Eval(EvalArgs),
    /// Iterate until the estimated remaining change is below --tol.
    Limit(LimitArgs),
    /// Evaluate the ten reference arguments at depth 50.
    Table(TableArgs),
    /// Evaluate the limit on an even grid and emit CSV.
    Sweep(SweepArgs),
    /// Locate the minimum over [1.001, 2].
    Min(MinArgs),
    /// Check the identities and report residuals.
    Verify(VerifyArgs),
    /// Print digits of pi from the x = 2 radical, checked against Machin's formula.
    Digits(DigitsArgs),
    /// Time digit generation for both algorithms.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Double,
    Bigfixed,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BackendArgs {
    #[arg(long, value_enum, default_value_t = Backend::Double)]
    pub backend: Backend,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PolicyArgs {
    /// Relative tolerance of the stopping rule.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,

    /// Iteration cap.
    #[arg(long, default_value_t = 10_000)]
    pub iters: usize,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long)]
    pub x: f64,
    #[arg(long, default_value_t = 50)]
    pub iters: usize,
    #[command(flatten)]
    pub backend: BackendArgs,
}

#[derive(Args, Debug)]
pub struct LimitArgs {
    #[arg(long)]
    pub x: f64,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[command(flatten)]
    pub backend: BackendArgs,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub backend: BackendArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1.01)]
    pub x_min: f64,
    #[arg(long, default_value_t = 3.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[command(flatten)]
    pub backend: BackendArgs,
}

#[derive(Args, Debug)]
pub struct MinArgs {
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[command(flatten)]
    pub backend: BackendArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run a single identity suite.
    #[arg(long, value_parser = parse_identity)]
    pub only: Option<IdentityKind>,

    /// Check one point instead of the suite (needs --only).
    #[arg(long, requires = "only")]
    pub x: Option<f64>,

    /// Depth for the single-point check.
    #[arg(long, requires = "x", default_value_t = 40)]
    pub i: usize,

    #[arg(long, default_value_t = crate::verify::DEFAULT_SEED)]
    pub seed: u64,

    /// Random points in the doubling suite.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct DigitsArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
    pub count: u64,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Digit counts to time.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "50,200,1000",
        value_parser = clap::value_parser!(u64).range(1..=1_000_000)
    )]
    pub levels: Vec<u64>,
}

fn parse_identity(s: &str) -> Result<IdentityKind, String> {
    s.parse()
}
