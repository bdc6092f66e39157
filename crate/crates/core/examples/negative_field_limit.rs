//! With a strong opposing field the per-dipole retention drops to 1 (single) and 5/6 (three uncoupled).
use glauber_retention::closedform::{tau_single, tau_three_uncoupled};

fn main() {
    for bh in [0.0, -1.0, -2.0, -5.0, -10.0] {
        println!(
            "beta_h {bh:>5}: single {:.10}  three uncoupled per dipole {:.10}",
            tau_single(bh),
            tau_three_uncoupled(bh) / 3.0
        );
    }
    println!("limits: 1 and {:.10}", 5.0 / 6.0);
}
