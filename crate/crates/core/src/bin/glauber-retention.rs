use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use glauber_retention::cli::{cmd_formula, cmd_simulate, cmd_solve, cmd_sweep, ModelSource};
use glauber_retention::dynamics::DEFAULT_MAX_EVENTS;
use glauber_retention::{Result, SimulationConfig};

/// Retention time of coupled-dipole memories under heat-bath dynamics.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    /// Topology file
    topology: PathBuf,
    /// Inverse temperature applied to every field and coupling in the file
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Replace every field in the file with this value
    #[arg(long)]
    h: Option<f64>,
    /// Per-dipole excitation rate, only used to convert events to time
    #[arg(long, default_value_t = 1.0)]
    lambda0: f64,
    /// With an even number of dipoles, treat a zero magnetization as still retained
    #[arg(long)]
    tie_survives: bool,
}

impl ModelArgs {
    fn source(&self) -> ModelSource {
        ModelSource {
            beta: self.beta,
            lambda0: self.lambda0,
            field_override: self.h,
            tie_is_failure: !self.tie_survives,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact expected retention time from the absorbing chain
    Solve(ModelArgs),
    /// Closed-form retention time of single, uncoupled3, triangle or linear3
    Formula {
        name: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta_h: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta_s: f64,
    },
    /// Monte Carlo estimate of the retention time
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_EVENTS)]
        max_events: u64,
        /// Run trajectories on one thread (same output as the parallel run)
        #[arg(long)]
        serial: bool,
    },
    /// Evaluate a sweep spec and write CSV
    Sweep { spec: PathBuf, output: PathBuf },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(model) => print!("{}", cmd_solve(&model.topology, &model.source())?),
        Command::Formula { name, beta_h, beta_s } => print!("{}", cmd_formula(&name, beta_h, beta_s)?),
        Command::Simulate {
            model,
            seed,
            samples,
            max_events,
            serial,
        } => {
            let config = SimulationConfig::new(seed, samples)?.with_max_events(max_events)?;
            print!("{}", cmd_simulate(&model.topology, &model.source(), &config, serial)?);
        }
        Command::Sweep { spec, output } => {
            let rows = cmd_sweep(&spec, &output)?;
            for row in &rows {
                eprintln!("{}", row.to_record().join(","));
            }
            eprintln!("wrote {} rows to {}", rows.len(), output.display());
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
