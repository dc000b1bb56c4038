//! `cpsphere`: dispersion potentials between an atom and a small
//! magnetodielectric sphere from the command line.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::XiGrid;
use config::{Spacing, UnitChoice};
use error::CliError;

#[derive(Parser)]
#[command(name = "cpsphere", version, about = "Atom-sphere Casimir-Polder and van der Waals potentials")]
struct Cli {
    /// TOML run configuration (defaults to the built-in figure scenario).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; CSV for tables, JSON summary for `verify`.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Unit system for input and output, overriding the config.
    #[arg(long, global = true, value_enum)]
    units: Option<UnitChoice>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the potential for a single configuration.
    Potential,
    /// Evaluate the potential over the `[sweep]` grid.
    Sweep,
    /// Tabulate the sphere response along the imaginary frequency axis.
    Polarizability {
        #[arg(long, default_value_t = 0.0)]
        xi_from: f64,
        #[arg(long, default_value_t = 10.0)]
        xi_to: f64,
        #[arg(long, default_value_t = 101)]
        xi_steps: usize,
        #[arg(long, value_enum, default_value_t = SpacingArg::Linear)]
        xi_spacing: SpacingArg,
    },
    /// Run the identity and limit checks.
    Verify {
        /// Replace every check's tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Run only these suites (repeatable or comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Print the effective configuration with all defaults filled in.
    PrintConfig,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SpacingArg {
    Linear,
    Log,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let output = cli.output.as_deref();
    match cli.command {
        Command::Verify { tolerance, only } => commands::verify(tolerance, only, cli.output.clone()),
        command => {
            let cfg = commands::load(cli.config.as_deref(), cli.units)?;
            match command {
                Command::Potential => commands::potential(&cfg, output),
                Command::Sweep => commands::sweep(&cfg, output, cli.jobs),
                Command::Polarizability {
                    xi_from,
                    xi_to,
                    xi_steps,
                    xi_spacing,
                } => {
                    let grid = XiGrid {
                        from: xi_from,
                        to: xi_to,
                        steps: xi_steps,
                        spacing: match xi_spacing {
                            SpacingArg::Linear => Spacing::Linear,
                            SpacingArg::Log => Spacing::Log,
                        },
                    };
                    commands::polarizability(&cfg, &grid, output)
                }
                Command::PrintConfig => {
                    cfg.resolve()?;
                    print!("{}", cfg.to_toml());
                    Ok(())
                }
                Command::Verify { .. } => unreachable!(),
            }
        }
    }
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
