use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cohloc_cli::run::{self, CliError, CommandOutput, EXIT_USAGE};

/// Coherence measures, pure-state decomposition extremes, and
/// concurrence identities for dense density matrices.
#[derive(Parser)]
#[command(name = "cohloc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all coherence measures (and the purification concurrence)
    /// of a density matrix
    Coherence {
        /// Matrix file: {"dim": n, "re": [[...]], "im": [[...]]} (im optional)
        input: PathBuf,
        /// Emit a flat CSV row instead of JSON
        #[arg(long)]
        csv: bool,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one of the verifiable relations over random states
    Verify {
        /// Which relation: 1, 2, 4, or 5
        #[arg(long)]
        theorem: u8,
        /// Bipartite dimensions, e.g. 2x4 (theorems 1 and 2 need A = 2)
        #[arg(long, value_parser = parse_dims)]
        dims: (usize, usize),
        /// Random instances to draw
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// RNG seed (mandatory: reports must be reproducible)
        #[arg(long)]
        seed: u64,
        /// Residual tolerance per check
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Decomposition samples per state (theorem 1 only); 0 skips the search
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Ensemble size for the decomposition search (default: rank-derived)
        #[arg(long)]
        m: Option<usize>,
        /// Emit per-trial CSV rows instead of the JSON summary
        #[arg(long)]
        csv: bool,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search pure-state decompositions of one state and compare the
    /// sampled/refined extremes against the closed forms
    Oracle {
        /// Matrix file, as for `coherence`
        input: PathBuf,
        /// Random decompositions to sample per objective
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Ensemble size (defaults to 2 * rank)
        #[arg(long)]
        m: Option<usize>,
        /// RNG seed (mandatory: reports must be reproducible)
        #[arg(long)]
        seed: u64,
        /// Emit per-objective CSV rows instead of JSON
        #[arg(long)]
        csv: bool,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_dims(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected AxB, got \"{text}\""))?;
    let n1: usize = a.trim().parse().map_err(|_| format!("bad dimension \"{a}\""))?;
    let n2: usize = b.trim().parse().map_err(|_| format!("bad dimension \"{b}\""))?;
    if n1 == 0 || n2 == 0 {
        return Err("dimensions must be >= 1".into());
    }
    Ok((n1, n2))
}

fn emit(output: CommandOutput, out: Option<&PathBuf>) -> Result<u8, CliError> {
    match out {
        Some(path) => fs::write(path, output.body).map_err(|e| CliError {
            code: EXIT_USAGE,
            message: format!("cannot write {}: {e}", path.display()),
        })?,
        None => {
            std::io::stdout()
                .write_all(output.body.as_bytes())
                .expect("stdout is writable");
        }
    }
    Ok(output.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Coherence { input, csv, out } => {
            run::coherence(input, *csv).and_then(|o| emit(o, out.as_ref()))
        }
        Command::Verify { theorem, dims, trials, seed, tolerance, samples, m, csv, out } => {
            let args = run::VerifyArgs {
                theorem: *theorem,
                dims: *dims,
                trials: *trials,
                seed: *seed,
                tolerance: *tolerance,
                samples: *samples,
                m: *m,
                csv: *csv,
            };
            run::verify(&args).and_then(|o| emit(o, out.as_ref()))
        }
        Command::Oracle { input, samples, m, seed, csv, out } => {
            let args = run::OracleArgs { samples: *samples, m: *m, seed: *seed, csv: *csv };
            run::oracle(input, &args).and_then(|o| emit(o, out.as_ref()))
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
