use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use geodiscord::GridSpec;
use geodiscord_cli::compute::{compute_report, MeasureFlag, MethodFlag};
use geodiscord_cli::input::read_state;
use geodiscord_cli::sweep::{run_sweep, write_csv, Example, SweepRange};
use geodiscord_cli::verify::{format_report, run_verify, GridArg, RunConfig};
use geodiscord_cli::CliError;

/// Geometric discord (GD) and geometric global quantum discord (GGQD) of
/// two-qubit states.
#[derive(Parser)]
#[command(name = "geodiscord", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate GD and/or GGQD of a state file (DM4 or X format).
    Compute {
        state_file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        measure: MeasureFlag,
        #[arg(long, value_enum, default_value = "analytic")]
        method: MethodFlag,
    },
    /// Write `param,gd,ggqd` rows along one of the example families.
    Sweep {
        #[arg(long, value_enum)]
        example: Example,
        /// start:end:steps, endpoints included.
        #[arg(long)]
        range: SweepRange,
        #[arg(long)]
        out: PathBuf,
        /// Initial |gg> amplitude for ex4 (default 1/sqrt 2) and ex5 (default 0.1).
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Cross-check closed forms, oracle and optimizers on seeded random states.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Allowed |analytic - brute force| deviation.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// n_theta:n_phi:refine_iters:refine_shrink (default 64:128:6:0.25).
        #[arg(long)]
        grid: Option<GridArg>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            state_file,
            measure,
            method,
        } => {
            let state = read_state(&state_file)?;
            print!("{}", compute_report(&state, measure, method)?);
        }
        Command::Sweep {
            example,
            range,
            out,
            alpha,
        } => {
            let records = run_sweep(example, &range, alpha)?;
            write_csv(&out, &records)?;
            println!("wrote {} rows to {}", records.len(), out.display());
        }
        Command::Verify {
            seed,
            trials,
            tol,
            out,
            grid,
        } => {
            let grid = grid.map_or_else(GridSpec::reference, |g| g.0);
            let cfg = RunConfig::new(seed, trials, tol, grid, out)?;
            let report = run_verify(&cfg);
            let text = format_report(&cfg, &report);
            print!("{text}");
            if let Some(path) = &cfg.output_path {
                std::fs::write(path, &text).map_err(|source| CliError::Unwritable {
                    path: path.clone(),
                    source,
                })?;
            }
            if !report.passed() {
                return Err(CliError::VerifyFailed);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
