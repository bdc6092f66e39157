//! The four built-in topologies side by side at a few couplings.
use glauber_retention::closedform::{ClosedFormInputs, NamedTopology};
use glauber_retention::exact::retention_time_exact;
use glauber_retention::ModelParams;

fn main() -> glauber_retention::Result<()> {
    let params = ModelParams::new(1.0)?;
    let beta_h = 0.5;
    for beta_s in [0.0, 0.5, 1.0, 2.0] {
        println!("beta_s = {beta_s}, beta_h = {beta_h}");
        for named in NamedTopology::ALL {
            let inputs = ClosedFormInputs::new(beta_h, beta_s)?;
            let formula = named.tau(inputs);
            let exact = retention_time_exact(&named.topology(beta_h, beta_s), &params)?;
            println!(
                "  {:<11} events {formula:>12.4}  per dipole {:>10.4}  exact {exact:>12.4}",
                named.name(),
                formula / named.n() as f64
            );
        }
    }
    Ok(())
}
