//! Log-slope of retention in the coupling: about 4 for the triangle and 2 for the chain.
use glauber_retention::closedform::{tau_linear, tau_ratio_triangle_over_linear, tau_triangle};

fn slope(f: fn(f64, f64) -> f64, beta_h: f64, lo: f64, hi: f64) -> f64 {
    (f(beta_h, hi).ln() - f(beta_h, lo).ln()) / (hi - lo)
}

fn main() {
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10}",
        "beta_h", "interval", "triangle", "linear", "ratio/e^2s"
    );
    for beta_h in [0.0, 1.0] {
        for (lo, hi) in [(0.5, 1.0), (1.0, 2.0), (2.0, 4.0), (4.0, 6.0)] {
            let prefactor = tau_ratio_triangle_over_linear(beta_h, hi) / (2.0 * hi).exp();
            println!(
                "{beta_h:>6} {:>10} {:>10.4} {:>10.4} {prefactor:>10.4}",
                format!("{lo}-{hi}"),
                slope(tau_triangle, beta_h, lo, hi),
                slope(tau_linear, beta_h, lo, hi)
            );
        }
    }
}
