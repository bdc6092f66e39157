//! Test-only oracles that do not go through `exact::build_chain`.
#![allow(dead_code)]

use glauber_retention::exact::build_chain;
use glauber_retention::model::energy;
use glauber_retention::{ModelParams, SpinState, Topology};
use rand::Rng;

// Frozen after confirmation by `value_iteration`.
pub const TRIANGLE_S1_H0: f64 = 113.196_300_066_288_56;
pub const LINEAR_S1_H0: f64 = 31.796_911_568_570_81;

/// Single-flip kernel written from energies alone: the flipped value is
/// taken with probability `1 / (1 + exp(beta * (E(y) - E(x))))`.
pub fn brute_force_kernel(topology: &Topology, beta: f64) -> Vec<Vec<f64>> {
    let n = topology.n();
    let states = 1usize << n;
    let energies: Vec<f64> = (0..states)
        .map(|x| energy(topology, &SpinState::from_bits(x, n)).unwrap())
        .collect();
    let mut p = vec![vec![0.0; states]; states];
    for x in 0..states {
        let mut leave = 0.0;
        for i in 0..n {
            let y = x ^ (1 << i);
            let q = 1.0 / (1.0 + (beta * (energies[y] - energies[x])).exp()) / n as f64;
            p[x][y] = q;
            leave += q;
        }
        p[x][x] = 1.0 - leave;
    }
    p
}

pub fn failed(x: usize, n: usize, tie_is_failure: bool) -> bool {
    let up = x.count_ones() as i64;
    let m = 2 * up - n as i64;
    m < 0 || (m == 0 && tie_is_failure)
}

/// Iterates `t <- 1 + Q t` from zero until `max |t - 1 - Q t| <= tol * max t`.
/// Returns expected events per state (0 on failed states) and the final relative residual.
pub fn value_iteration(topology: &Topology, beta: f64, tie_is_failure: bool, tol: f64) -> (Vec<f64>, f64) {
    let n = topology.n();
    let p = brute_force_kernel(topology, beta);
    let states = 1usize << n;
    let transient: Vec<bool> = (0..states).map(|x| !failed(x, n, tie_is_failure)).collect();
    let mut t = vec![0.0; states];
    let mut next = vec![0.0; states];
    for _ in 0..50_000_000u64 {
        for x in 0..states {
            next[x] = if transient[x] {
                1.0 + (0..states)
                    .filter(|&y| transient[y])
                    .map(|y| p[x][y] * t[y])
                    .sum::<f64>()
            } else {
                0.0
            };
        }
        std::mem::swap(&mut t, &mut next);
        let scale = t.iter().cloned().fold(0.0, f64::max);
        let residual = (0..states)
            .filter(|&x| transient[x])
            .map(|x| {
                let qt: f64 = (0..states).filter(|&y| transient[y]).map(|y| p[x][y] * t[y]).sum();
                (t[x] - 1.0 - qt).abs()
            })
            .fold(0.0, f64::max)
            / scale;
        if residual <= tol {
            return (t, residual);
        }
    }
    panic!("value iteration did not converge");
}

/// Random topology with `n` dipoles, random edges and couplings/fields in `[-range, range]`.
pub fn random_topology<R: Rng>(rng: &mut R, n: usize, range: f64) -> Topology {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.6) {
                edges.push((i, j, rng.random_range(-range..=range)));
            }
        }
    }
    let field = (0..n).map(|_| rng.random_range(-range..=range)).collect();
    Topology::new(n, edges, field).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Worst relative violation of detailed balance over all single-flip pairs.
pub fn detailed_balance_worst(topo: &Topology, beta: f64) -> f64 {
    // pi(x) P(x, y) = pi(y) P(y, x) checked as P(x, y) / P(y, x) = exp(-beta (E(y) - E(x)))
    let n = topo.n();
    let params = ModelParams::new(beta).unwrap();
    let chain = build_chain(topo, &params).unwrap();
    let energies: Vec<f64> = (0..1usize << n)
        .map(|x| energy(topo, &SpinState::from_bits(x, n)).unwrap())
        .collect();
    let mut worst = 0.0f64;
    for x in 0..1usize << n {
        for i in 0..n {
            let y = x ^ (1 << i);
            let ratio = chain.transition(x, y) / chain.transition(y, x);
            let boltzmann = (-beta * (energies[y] - energies[x])).exp();
            worst = worst.max((ratio - boltzmann).abs() / boltzmann);
        }
    }
    worst
}
