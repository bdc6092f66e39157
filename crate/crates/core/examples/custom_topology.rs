//! Parses a five-dipole ring from text and solves it exactly and by simulation.
use glauber_retention::dynamics::estimate_retention;
use glauber_retention::exact::{build_chain, solve_hitting_times};
use glauber_retention::{ModelParams, SimulationConfig, Topology};

const RING: &str = "\
# five dipoles on a ring with one weak bond
n 5
h 0.2
edge 0 1 1
edge 1 2 1
edge 2 3 1
edge 3 4 1
edge 4 0 0.3
";

fn main() -> glauber_retention::Result<()> {
    let topology: Topology = RING.parse()?;
    let params = ModelParams::new(1.0)?;
    let chain = build_chain(&topology, &params)?;
    let solution = solve_hitting_times(&chain)?;
    println!(
        "states {}, residual {:.1e}",
        chain.n_states(),
        solution.relative_residual(&chain)
    );
    println!("exact      {:.4} events", solution.all_up());

    let est = estimate_retention(&topology, &params, &SimulationConfig::new(5, 50_000)?)?;
    println!("simulated  {:.4} +- {:.4} events", est.mean_events, est.std_error);
    Ok(())
}
