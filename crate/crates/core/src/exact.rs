//! Exact expected hitting times on the full `2^n` configuration space.
//!
//! States are `n`-bit integers with bit `i` set when dipole `i` is `+1`.
//! The embedded jump chain moves `x -> x ^ (1 << i)` with probability
//! `(1/n) * P(dipole i redrawn to the other value)`; everything else stays
//! on the diagonal. Failed states are absorbing, and the expected event
//! counts `t` on the transient states solve `(I - Q) t = 1`.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::model::{failed_magnetization, heat_bath_up_probability, ModelParams};
use crate::topology::Topology;

/// Largest topology [`build_chain`] accepts.
pub const MAX_CHAIN_DIPOLES: usize = 20;
/// Largest topology [`solve_hitting_times`] solves densely.
pub const MAX_DENSE_DIPOLES: usize = 12;

/// Row-stochastic single-flip transition matrix in compressed-row form.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainModel {
    n_dipoles: usize,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
    absorbing: Vec<bool>,
}

impl ChainModel {
    pub fn n_dipoles(&self) -> usize {
        self.n_dipoles
    }

    pub fn n_states(&self) -> usize {
        self.absorbing.len()
    }

    /// Nonzero `(target, probability)` entries of row `state`, sorted by target.
    pub fn row(&self, state: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_start[state]..self.row_start[state + 1];
        self.cols[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    pub fn transition(&self, from: usize, to: usize) -> f64 {
        self.row(from).find(|&(c, _)| c == to).map_or(0.0, |(_, p)| p)
    }

    pub fn absorbing_mask(&self) -> &[bool] {
        &self.absorbing
    }

    pub fn is_absorbing(&self, state: usize) -> bool {
        self.absorbing[state]
    }

    /// The all-`+1` configuration.
    pub fn all_up_state(&self) -> usize {
        self.n_states() - 1
    }
}

pub fn build_chain(topology: &Topology, params: &ModelParams) -> Result<ChainModel> {
    let n = topology.n();
    if n > MAX_CHAIN_DIPOLES {
        return Err(Error::Capacity {
            n,
            cap: MAX_CHAIN_DIPOLES,
            what: "chain construction",
        });
    }
    let n_states = 1usize << n;
    let weight = 1.0 / n as f64;
    let mut row_start = Vec::with_capacity(n_states + 1);
    let mut cols = Vec::with_capacity(n_states * (n + 1));
    let mut values = Vec::with_capacity(n_states * (n + 1));
    let mut absorbing = Vec::with_capacity(n_states);
    let mut spins = vec![0i8; n];
    let mut entries: Vec<(usize, f64)> = Vec::with_capacity(n + 1);

    for x in 0..n_states {
        for (i, s) in spins.iter_mut().enumerate() {
            *s = if x >> i & 1 == 1 { 1 } else { -1 };
        }
        let m: i64 = spins.iter().map(|&s| i64::from(s)).sum();
        absorbing.push(failed_magnetization(m, params.tie_is_failure()));

        entries.clear();
        let mut leave = 0.0;
        for i in 0..n {
            // flipping spin s has probability up(-s delta), avoiding 1 - up cancellation
            let delta = topology.local_field_raw(&spins, i);
            let flip = heat_bath_up_probability(-f64::from(spins[i]) * delta, params.beta());
            let p = weight * flip;
            leave += p;
            if p > 0.0 {
                entries.push((x ^ (1 << i), p));
            }
        }
        let stay = 1.0 - leave;
        if stay > 0.0 {
            entries.push((x, stay));
        }
        entries.sort_unstable_by_key(|&(c, _)| c);

        row_start.push(cols.len());
        for &(c, p) in &entries {
            cols.push(c);
            values.push(p);
        }
    }
    row_start.push(cols.len());

    Ok(ChainModel {
        n_dipoles: n,
        row_start,
        cols,
        values,
        absorbing,
    })
}

/// Expected number of events to absorption from every state.
#[derive(Debug, Clone, PartialEq)]
pub struct HittingTimeSolution {
    expected_events: Vec<f64>,
}

impl HittingTimeSolution {
    /// Indexed by state; absorbing states carry 0.
    pub fn expected_events(&self) -> &[f64] {
        &self.expected_events
    }

    pub fn at(&self, state: usize) -> f64 {
        self.expected_events[state]
    }

    pub fn all_up(&self) -> f64 {
        *self.expected_events.last().expect("at least two states")
    }

    /// `max |t - 1 - Q t| / max |t|` over transient states.
    pub fn relative_residual(&self, chain: &ChainModel) -> f64 {
        let t = &self.expected_events;
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for x in (0..chain.n_states()).filter(|&x| !chain.is_absorbing(x)) {
            let qt: f64 = chain
                .row(x)
                .filter(|&(y, _)| !chain.is_absorbing(y))
                .map(|(y, p)| p * t[y])
                .sum();
            worst = worst.max((t[x] - 1.0 - qt).abs());
            scale = scale.max(t[x].abs());
        }
        if scale == 0.0 {
            worst
        } else {
            worst / scale
        }
    }
}

/// Solves `(I - Q) t = 1` with dense partial-pivot LU.
///
/// Every transient state must be able to reach the absorbing set; the
/// first one that cannot is reported.
pub fn solve_hitting_times(chain: &ChainModel) -> Result<HittingTimeSolution> {
    let n = chain.n_dipoles();
    if n > MAX_DENSE_DIPOLES {
        return Err(Error::Capacity {
            n,
            cap: MAX_DENSE_DIPOLES,
            what: "the dense hitting-time solve",
        });
    }
    if let Some(state) = first_unreachable(chain) {
        return Err(Error::Unreachable { state });
    }

    let transient: Vec<usize> = (0..chain.n_states()).filter(|&x| !chain.is_absorbing(x)).collect();
    let mut index = vec![usize::MAX; chain.n_states()];
    for (k, &x) in transient.iter().enumerate() {
        index[x] = k;
    }

    let size = transient.len();
    let mut expected_events = vec![0.0; chain.n_states()];
    if size == 0 {
        return Ok(HittingTimeSolution { expected_events });
    }

    let mut system = DMatrix::<f64>::identity(size, size);
    for (k, &x) in transient.iter().enumerate() {
        for (y, p) in chain.row(x) {
            if !chain.is_absorbing(y) {
                system[(k, index[y])] -= p;
            }
        }
    }
    let ones = DVector::<f64>::from_element(size, 1.0);
    let t = system
        .lu()
        .solve(&ones)
        .ok_or_else(|| Error::Singular("I - Q is not invertible".into()))?;

    for (k, &x) in transient.iter().enumerate() {
        expected_events[x] = t[k];
    }
    Ok(HittingTimeSolution { expected_events })
}

/// Reverse breadth-first search from the absorbing set.
fn first_unreachable(chain: &ChainModel) -> Option<usize> {
    let n_states = chain.n_states();
    // predecessors through positive-probability moves
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n_states];
    for x in 0..n_states {
        for (y, p) in chain.row(x) {
            if y != x && p > 0.0 {
                preds[y].push(x);
            }
        }
    }
    let mut reached = chain.absorbing_mask().to_vec();
    let mut queue: VecDeque<usize> = (0..n_states).filter(|&x| reached[x]).collect();
    while let Some(y) = queue.pop_front() {
        for &x in &preds[y] {
            if !reached[x] {
                reached[x] = true;
                queue.push_back(x);
            }
        }
    }
    reached.iter().position(|&r| !r)
}

/// Expected event count from all `+1` until the majority is lost.
pub fn retention_time_exact(topology: &Topology, params: &ModelParams) -> Result<f64> {
    let chain = build_chain(topology, params)?;
    Ok(solve_hitting_times(&chain)?.all_up())
}
