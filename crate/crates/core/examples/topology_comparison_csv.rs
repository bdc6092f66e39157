//! Writes the triangle / chain / single-dipole comparison over a log grid of couplings as CSV.
//!
//! `cargo run --example topology_comparison_csv -- out.csv`
use glauber_retention::cli::{run_sweep, write_sweep_csv, BetaSGrid, Method, SweepSpec, TopologyRef};
use glauber_retention::closedform::NamedTopology;
use glauber_retention::SimulationConfig;

fn main() -> glauber_retention::Result<()> {
    let output = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "topology_comparison.csv".into());
    let spec = SweepSpec {
        topologies: [NamedTopology::Triangle, NamedTopology::Linear3, NamedTopology::Single]
            .into_iter()
            .map(TopologyRef::Named)
            .collect(),
        methods: vec![Method::ClosedForm],
        beta_h: vec![-1.0, 0.0, 1.0],
        beta_s: BetaSGrid::log(0.1, 10.0, 40)?,
        simulation: SimulationConfig::new(0, 1)?,
    };
    let rows = run_sweep(&spec)?;
    write_sweep_csv(output.as_ref(), &rows)?;
    println!("wrote {} rows to {output}", rows.len());
    Ok(())
}
