use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use triop::experiment::{run, Overrides};

/// Experiment runner for the three-operator splitting solver.
#[derive(Parser)]
#[command(name = "triop", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a TOML spec file.
    Run {
        /// Path to the experiment spec.
        spec: PathBuf,
        /// Directory for trace.csv and report files.
        #[arg(long)]
        out: PathBuf,
        /// Certify the convergence inequalities inline (overrides the spec).
        #[arg(long)]
        check: bool,
        /// Iteration budget (overrides the spec).
        #[arg(long)]
        max_iter: Option<usize>,
        /// Stopping threshold on the gradient-mapping norm (overrides the spec).
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            spec,
            out,
            check,
            max_iter,
            tol,
        } => {
            let overrides = Overrides {
                check: check.then_some(true),
                max_iter,
                tol,
            };
            ExitCode::from(run(&spec, &out, &overrides) as u8)
        }
    }
}
