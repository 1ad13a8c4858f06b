//! `renyi-risk`: risk reports, sweeps over the conjugate order, dual norms,
//! Kusuoka measures and Rényi entropies from the command line.

mod commands;
mod error;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser)]
#[command(name = "renyi-risk", version, about = "Rényi-entropy Entropic Value-at-Risk on empirical distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the risk measure for every combination of levels and orders.
    Risk {
        /// CSV with a `value` column and optional `weight`, or JSON atoms.
        #[arg(long)]
        input: String,
        /// Confidence levels in [0,1], comma separated or repeated.
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<String>,
        /// Orders: decimals, `inf`, `1` for AVaR, negatives allowed.
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        order: Vec<String>,
        /// Include the optimal density of each entry (JSON only).
        #[arg(long)]
        emit_density: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tabulate the risk measure over a grid of conjugate orders.
    Sweep {
        #[arg(long)]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Grid `lo:hi:n` of conjugate orders with `lo > 1`.
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        pprime: Option<String>,
        /// Named grid. `chain` spans every regime from AVaR to the supremum.
        #[arg(long)]
        preset: Option<String>,
        /// Destination file; stdout when omitted.
        #[arg(long)]
        output: Option<String>,
    },
    /// Dual norm of the functional given by a density file.
    Dualnorm {
        #[arg(long)]
        density: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        order: String,
    },
    /// Kusuoka mixing measure and distortion of the risk measure at the input.
    Kusuoka {
        #[arg(long)]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        order: String,
    },
    /// Rényi entropies of a density file.
    Entropy {
        #[arg(long)]
        density: String,
        /// Orders, comma separated or repeated; `inf` allowed.
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        q: Vec<String>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = commands::solver_config()?;
    match cli.command {
        Command::Risk {
            input,
            alpha,
            order,
            emit_density,
            format,
        } => commands::risk(&input, &alpha, &order, emit_density, format, &config),
        Command::Sweep {
            input,
            alpha,
            pprime,
            preset,
            output,
        } => commands::sweep(&input, &alpha, pprime.as_deref(), preset.as_deref(), output.as_deref(), &config),
        Command::Dualnorm { density, alpha, order } => commands::dualnorm(&density, &alpha, &order),
        Command::Kusuoka { input, alpha, order } => commands::kusuoka(&input, &alpha, &order, &config),
        Command::Entropy { density, q } => commands::entropy(&density, &q),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("renyi-risk: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
