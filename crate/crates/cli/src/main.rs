use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::Parser;
use onepoint_cli::{run, Format, Registry, RunConfig, DEFAULT_RADIUS, DEFAULT_SEED};

/// Exact checks on lattice simplices with exactly one interior lattice point.
///
/// Exit status: 0 pass, 1 a check failed, 2 usage or input error,
/// 3 enumeration cap exceeded.
#[derive(Parser)]
#[command(name = "onepoint", version)]
struct Args {
    /// Check to run.
    #[arg(value_parser = PossibleValuesParser::new(Registry::standard().names()))]
    check: String,

    /// Simplex files (TOML with `dim` and `vertices`).
    inputs: Vec<PathBuf>,

    /// Refuse enumerations that would visit more lattice points than this.
    #[arg(long, default_value_t = onepoint::DEFAULT_CAP)]
    cap: u64,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Seed for randomized invariance checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Coordinate radius for the planar atlas.
    #[arg(long, default_value_t = DEFAULT_RADIUS)]
    radius: i64,

    /// Dimension for generated families.
    #[arg(long)]
    dim: Option<usize>,

    /// A point such as `1,1` or `1/2,-3`.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,

    /// Directory for generated simplex files.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = RunConfig {
        check: args.check,
        inputs: args.inputs,
        cap: args.cap,
        format: args.format,
        seed: args.seed,
        radius: args.radius,
        dim: args.dim,
        point: args.point,
        out: args.out,
    };
    let outcome = run(&config);
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
