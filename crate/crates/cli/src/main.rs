//! `hurwitz`: reports, theorem verdicts, figures and randomized sweeps for
//! planar convex bodies given by trigonometric support functions.

mod commands;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable overriding the number of worker threads.
pub const WORKERS_ENV: &str = "HURWITZ_WORKERS";

#[derive(Parser)]
#[command(name = "hurwitz", version, about = "Reverse isoperimetric inequalities on convex bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the functionals of a body as JSON.
    Report(BodyArgs),
    /// Evaluate every theorem on a body.
    Verify(BodyArgs),
    /// Draw curves attached to a body as SVG.
    Render(RenderArgs),
    /// Run the theorem suite on seeded random bodies.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathChoice {
    Spectral,
    Geometric,
    Both,
}

#[derive(Args, Clone)]
#[group(id = "source", required = true, multiple = false)]
pub struct SourceArgs {
    /// Support function JSON file: {"a0": .., "harmonics": [{"n", "a", "b"}]}.
    #[arg(long, group = "source")]
    pub body: Option<PathBuf>,
    /// Named body, e.g. circle:1, astroid:1,0.2, deltoid:1,0.1,
    /// hypo-parallel:5,1,0.01, random:7,6,cw, hypocycloid:5/2,1.
    #[arg(long, group = "source")]
    pub spec: Option<String>,
}

#[derive(Args, Clone)]
pub struct NumericArgs {
    /// Quadrature nodes for geometric functionals.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Nodes per direction for exterior integrals.
    #[arg(long)]
    pub exterior_nodes: Option<usize>,
    /// Excluded boundary collar, as a minimal support-line gap in radians.
    #[arg(long)]
    pub collar: Option<f64>,
    /// Relative tolerance for equality decisions.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = PathChoice::Spectral)]
    pub path: PathChoice,
    /// Output file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct BodyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Args, Clone)]
pub struct RenderArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Comma-separated layers: boundary, evolute, pedal, parallel[=r],
    /// wigner, or curve for a hypocycloid spec.
    #[arg(long, default_value = "boundary")]
    pub kind: String,
    /// Samples per curve.
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run the geometric path on every n-th body when it is selected.
    #[arg(long, default_value_t = 10)]
    pub geometric_every: usize,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

/// Successful runs either hold every inequality or found a violation.
pub enum Outcome {
    Pass,
    Violation,
}

fn configure_workers() -> Result<()> {
    let Ok(value) = std::env::var(WORKERS_ENV) else { return Ok(()) };
    let Ok(n) = value.trim().parse::<usize>() else { bail!("{WORKERS_ENV} must be a positive integer, got '{value}'") };
    if n == 0 {
        bail!("{WORKERS_ENV} must be positive");
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome> {
    configure_workers()?;
    match cli.command {
        Command::Report(args) => commands::report(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Render(args) => commands::render(&args),
        Command::Sweep(args) => commands::sweep(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
