use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fgate_cli::{cmd_field_profile, cmd_gate_time, cmd_simulate, cmd_sweep, CliError};
use fullerene_gate::fieldgen::FEASIBLE_CURRENT;

#[derive(Parser)]
#[command(name = "fgate", version, about = "Two-qubit phase gate between dipole-coupled fullerene spins")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a configuration; write trajectory.csv, summary.txt and manifest.json
    Simulate {
        config: PathBuf,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print the gate summary only
    GateTime { config: PathBuf },
    /// Run a one-parameter sweep
    Sweep {
        spec: PathBuf,
        /// Output CSV
        #[arg(long, default_value = "sweep.csv")]
        out: PathBuf,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Sample the wire-pair gradient field
    FieldProfile {
        wires: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        points: usize,
        /// Output CSV (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, out } => {
            let res = cmd_simulate(&config, &out)?;
            print!("{}", res.summary);
        }
        Command::GateTime { config } => print!("{}", cmd_gate_time(&config)?),
        Command::Sweep { spec, out, jobs } => {
            cmd_sweep(&spec, &out, jobs)?;
            eprintln!("wrote {}", out.display());
        }
        Command::FieldProfile { wires, from, to, points, out } => {
            let (csv, pair) = cmd_field_profile(&wires, from, to, points)?;
            if !pair.current_is_feasible() {
                eprintln!(
                    "warning: |I| = {} A is outside the practical window {}..{} A",
                    pair.current.abs(),
                    FEASIBLE_CURRENT.0,
                    FEASIBLE_CURRENT.1
                );
            }
            match out {
                Some(p) => std::fs::write(&p, csv).map_err(|e| CliError::io(p, e))?,
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
