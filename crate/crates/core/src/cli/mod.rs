//! Command implementations behind the `glauber-retention` binary.
//!
//! Each command returns the exact text the binary prints, so tests can
//! check output bytes without spawning a process.

mod sweep;

use std::fmt::Write as _;
use std::path::Path;

pub use sweep::{
    evaluate_point, run_sweep, write_sweep_csv, BetaSGrid, Method, SweepRow, SweepSpec, TopologyRef, CSV_HEADER,
};

use crate::closedform::{ClosedFormInputs, NamedTopology};
use crate::dynamics::{estimate_retention, estimate_retention_serial, SimulationConfig};
use crate::error::Result;
use crate::exact::retention_time_exact;
use crate::model::ModelParams;
use crate::topology::Topology;

/// Loads a topology file and applies `beta`, an optional uniform field override and the tie rule.
#[derive(Debug, Clone)]
pub struct ModelSource {
    pub beta: f64,
    pub lambda0: f64,
    pub field_override: Option<f64>,
    pub tie_is_failure: bool,
}

impl Default for ModelSource {
    fn default() -> Self {
        Self {
            beta: 1.0,
            lambda0: 1.0,
            field_override: None,
            tie_is_failure: true,
        }
    }
}

impl ModelSource {
    pub fn load(&self, path: &Path) -> Result<(Topology, ModelParams)> {
        let mut topology = Topology::from_path(path)?;
        if let Some(h) = self.field_override {
            topology = topology.replace_field(h)?;
        }
        let params = ModelParams::new(self.beta)?
            .with_lambda0(self.lambda0)?
            .with_tie_is_failure(self.tie_is_failure);
        Ok((topology, params))
    }
}

fn normalizations(out: &mut String, events: f64, n: usize, lambda0: f64) {
    writeln!(out, "events={events}").unwrap();
    writeln!(out, "events_per_dipole={}", events / n as f64).unwrap();
    writeln!(out, "time={}", events / (n as f64 * lambda0)).unwrap();
}

/// Exact expected retention time of a topology file.
pub fn cmd_solve(path: &Path, source: &ModelSource) -> Result<String> {
    let (topology, params) = source.load(path)?;
    let events = retention_time_exact(&topology, &params)?;
    let mut out = String::new();
    writeln!(out, "method=exact").unwrap();
    writeln!(out, "n={}", topology.n()).unwrap();
    normalizations(&mut out, events, topology.n(), params.lambda0());
    Ok(out)
}

/// Closed-form expected retention time of a named topology.
pub fn cmd_formula(name: &str, beta_h: f64, beta_s: f64) -> Result<String> {
    let topology: NamedTopology = name.parse()?;
    let events = topology.tau(ClosedFormInputs::new(beta_h, beta_s)?);
    let mut out = String::new();
    writeln!(out, "method=closedform").unwrap();
    writeln!(out, "topology={topology}").unwrap();
    writeln!(out, "n={}", topology.n()).unwrap();
    normalizations(&mut out, events, topology.n(), 1.0);
    Ok(out)
}

/// Monte Carlo estimate of the retention time of a topology file.
pub fn cmd_simulate(path: &Path, source: &ModelSource, config: &SimulationConfig, serial: bool) -> Result<String> {
    let (topology, params) = source.load(path)?;
    let estimate = if serial {
        estimate_retention_serial(&topology, &params, config)?
    } else {
        estimate_retention(&topology, &params, config)?
    };
    let mut out = String::new();
    writeln!(out, "method=montecarlo").unwrap();
    writeln!(out, "n={}", topology.n()).unwrap();
    writeln!(out, "seed={}", config.seed).unwrap();
    writeln!(out, "mean_events={}", estimate.mean_events).unwrap();
    writeln!(out, "std_error={}", estimate.std_error).unwrap();
    writeln!(out, "n_samples={}", estimate.n_samples).unwrap();
    writeln!(out, "n_censored={}", estimate.n_censored).unwrap();
    writeln!(
        out,
        "mean_events_per_dipole={}",
        estimate.mean_events / topology.n() as f64
    )
    .unwrap();
    writeln!(out, "mean_time={}", estimate.mean_time).unwrap();
    Ok(out)
}

/// Runs a sweep spec file and writes the CSV; returns the rows written.
pub fn cmd_sweep(spec_path: &Path, output: &Path) -> Result<Vec<SweepRow>> {
    let spec = SweepSpec::from_path(spec_path)?;
    let rows = run_sweep(&spec)?;
    write_sweep_csv(output, &rows)?;
    Ok(rows)
}
