//! `axint` command-line front end.
//!
//! Exit codes: 0 success or PASS, 1 audit FAIL, 2 configuration error, 3 numeric failure.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Body, CmdResult, Failure, Flags, Outcome};
use config::Config;
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "axint", version, about = "Integrable axially symmetric systems in oblate spheroidal coordinates")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<String>,

    /// Output file; standard output when absent.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Seed for sampled audit points and for the corruption field.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Integration tolerance, overriding `tol` in the configuration.
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,

    /// Multiply Φ by `1 + EPS·w(x)` with a seeded field `|w| ≤ 1`.
    #[arg(long = "corrupt-phi", global = true, value_name = "EPS", allow_negative_numbers = true)]
    corrupt_phi: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate U on a grid of the meridian plane.
    PotentialGrid,
    /// Integrate a trajectory and tabulate it.
    Simulate,
    /// Check invariant drift, Poisson brackets, quadrature constants and involution.
    Audit,
    /// Separated quantum equations.
    Quantum {
        #[command(subcommand)]
        which: QuantumCommand,
    },
    /// Check that C₂, C₃ and the time relation stay constant along single-branch segments.
    QuadratureCheck,
}

#[derive(Subcommand, Debug)]
enum QuantumCommand {
    /// Lowest angular eigenvalues G for given ℓ and γ².
    Angular,
    /// Radial solution or its origin series.
    Radial,
}

fn run(cli: &Cli) -> CmdResult<Outcome> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let flags = Flags {
        seed: cli.seed,
        tol: cli.tol,
        corrupt_phi: cli.corrupt_phi,
    };
    match &cli.command {
        Command::PotentialGrid => commands::potential_grid_cmd(&cfg, &flags),
        Command::Simulate => commands::simulate_cmd(&cfg, &flags),
        Command::Audit => commands::audit_cmd(&cfg, &flags),
        Command::Quantum { which: QuantumCommand::Angular } => commands::quantum_angular_cmd(&cfg, &flags),
        Command::Quantum { which: QuantumCommand::Radial } => commands::quantum_radial_cmd(&cfg, &flags),
        Command::QuadratureCheck => commands::quadrature_check_cmd(&cfg, &flags),
    }
}

fn emit(text: &str, out: Option<&str>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Config(msg)) => {
            eprintln!("axint: configuration error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("axint: numeric failure: {msg}");
            return ExitCode::from(3);
        }
    };
    let text = match &outcome.body {
        Body::Table(t) => t.render(format),
        Body::Report(r) => r.render(format),
    };
    if let Err(e) = emit(&text, cli.out.as_deref()) {
        eprintln!("axint: cannot write output: {e}");
        return ExitCode::from(2);
    }
    match outcome.verdict {
        Some((pass, summary)) => {
            eprintln!("{summary}");
            ExitCode::from(if pass { 0 } else { 1 })
        }
        None => ExitCode::SUCCESS,
    }
}
