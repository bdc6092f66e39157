//! Checks pi(x) P(x, y) = pi(y) P(y, x) on every single-flip pair of a random five-dipole model.
use glauber_retention::exact::build_chain;
use glauber_retention::model::energy;
use glauber_retention::{ModelParams, SpinState, Topology};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> glauber_retention::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 5;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, rng.random_range(-2.0..2.0)));
        }
    }
    let field = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
    let topology = Topology::new(n, edges, field)?;

    for beta in [0.25, 1.0, 2.0] {
        let chain = build_chain(&topology, &ModelParams::new(beta)?)?;
        let mut worst = 0.0f64;
        for x in 0..chain.n_states() {
            for i in 0..n {
                let y = x ^ (1 << i);
                let de =
                    energy(&topology, &SpinState::from_bits(y, n))? - energy(&topology, &SpinState::from_bits(x, n))?;
                let ratio = chain.transition(x, y) / chain.transition(y, x);
                worst = worst.max((ratio / (-beta * de).exp() - 1.0).abs());
            }
        }
        println!("beta {beta}: worst relative violation {worst:.2e}");
    }
    Ok(())
}
