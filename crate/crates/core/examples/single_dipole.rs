//! Retention of one dipole against the field, from the closed form and the exact solver.
use glauber_retention::closedform::tau_single;
use glauber_retention::exact::retention_time_exact;
use glauber_retention::{ModelParams, Topology};

fn main() -> glauber_retention::Result<()> {
    let params = ModelParams::new(1.0)?;
    println!("{:>6} {:>14} {:>14}", "beta_h", "closed form", "exact");
    for bh in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let exact = retention_time_exact(&Topology::single(bh), &params)?;
        println!("{bh:>6} {:>14.6} {exact:>14.6}", tau_single(bh));
    }
    Ok(())
}
