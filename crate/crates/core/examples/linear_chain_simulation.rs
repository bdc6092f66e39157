//! Monte Carlo against the closed form for the three-dipole chain over a log grid of couplings.
//!
//! `cargo run --release --example linear_chain_simulation -- [samples] [seed]`
use glauber_retention::cli::BetaSGrid;
use glauber_retention::closedform::tau_linear;
use glauber_retention::dynamics::estimate_retention;
use glauber_retention::{ModelParams, SimulationConfig, Topology};

fn main() -> glauber_retention::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().map_or(20_000, |s| s.parse().expect("samples"));
    let seed = args.next().map_or(1, |s| s.parse().expect("seed"));
    let params = ModelParams::new(1.0)?;

    println!(
        "{:>8} {:>12} {:>12} {:>10} {:>6}",
        "beta_s", "formula", "simulated", "std_err", "z"
    );
    for beta_s in BetaSGrid::log(0.1, 2.5, 8)?.values() {
        let formula = tau_linear(0.0, beta_s);
        let config = SimulationConfig::new(seed, samples)?;
        let est = estimate_retention(&Topology::linear3(0.0, beta_s), &params, &config)?;
        let z = (est.mean_events - formula) / est.std_error;
        println!(
            "{beta_s:>8.4} {formula:>12.4} {:>12.4} {:>10.4} {z:>6.2}",
            est.mean_events, est.std_error
        );
    }
    Ok(())
}
