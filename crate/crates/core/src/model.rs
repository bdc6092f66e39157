//! Spin configurations, energies and the heat-bath kernel.
//!
//! The energy of a configuration `A` on a [`Topology`] is
//!
//! ```text
//! E(A) = - sum_i H_i A_i - sum_{(i,j) in E} s_ij A_i A_j
//! ```
//!
//! When dipole `i` is excited it forgets its current value and is redrawn
//! from the conditional Boltzmann distribution given its neighbours: it
//! lands on `+1` with probability `e^{b D} / (e^{b D} + e^{-b D})`, where
//! `D = H_i + sum_j s_ij A_j` is the local field and `b` the inverse
//! temperature.

use crate::error::{Error, Result};
use crate::topology::Topology;

/// Assignment of `+1` / `-1` to every dipole.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinState {
    spins: Vec<i8>,
}

impl SpinState {
    pub fn all_up(n: usize) -> Self {
        Self { spins: vec![1; n] }
    }

    pub fn from_spins(spins: impl IntoIterator<Item = i64>) -> Result<Self> {
        let spins = spins
            .into_iter()
            .map(|s| match s {
                1 => Ok(1),
                -1 => Ok(-1),
                other => Err(Error::InvalidSpin(other)),
            })
            .collect::<Result<Vec<i8>>>()?;
        Ok(Self { spins })
    }

    /// Decodes the `n`-bit integer encoding: bit `i` set means dipole `i` is `+1`.
    pub fn from_bits(bits: usize, n: usize) -> Self {
        Self {
            spins: (0..n).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect(),
        }
    }

    pub fn to_bits(&self) -> usize {
        self.spins
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    pub fn get(&self, i: usize) -> i8 {
        self.spins[i]
    }

    pub fn set(&mut self, i: usize, up: bool) {
        self.spins[i] = if up { 1 } else { -1 };
    }

    /// Copy with dipole `i` forced to `+1` (`up`) or `-1`.
    pub fn with_spin(&self, i: usize, up: bool) -> Self {
        let mut next = self.clone();
        next.set(i, up);
        next
    }

    pub fn magnetization(&self) -> i64 {
        self.spins.iter().map(|&s| i64::from(s)).sum()
    }
}

/// Inverse temperature, excitation rate and the even-`n` tie convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    beta: f64,
    lambda0: f64,
    tie_is_failure: bool,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            beta: 1.0,
            lambda0: 1.0,
            tie_is_failure: true,
        }
    }
}

impl ModelParams {
    /// `lambda0 = 1`, ties count as failures.
    pub fn new(beta: f64) -> Result<Self> {
        Self::default().with_beta(beta)
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "beta must be finite and >= 0, got {beta}"
            )));
        }
        self.beta = beta;
        Ok(self)
    }

    pub fn with_lambda0(mut self, lambda0: f64) -> Result<Self> {
        if !(lambda0.is_finite() && lambda0 > 0.0) {
            return Err(Error::InvalidParams(format!(
                "lambda0 must be finite and > 0, got {lambda0}"
            )));
        }
        self.lambda0 = lambda0;
        Ok(self)
    }

    pub fn with_tie_is_failure(mut self, tie_is_failure: bool) -> Self {
        self.tie_is_failure = tie_is_failure;
        self
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn tie_is_failure(&self) -> bool {
        self.tie_is_failure
    }
}

fn check_len(topology: &Topology, state: &SpinState) -> Result<()> {
    if state.len() != topology.n() {
        return Err(Error::DimensionMismatch {
            expected: topology.n(),
            found: state.len(),
        });
    }
    Ok(())
}

/// `-sum_i H_i A_i - sum_(i,j) s_ij A_i A_j`.
pub fn energy(topology: &Topology, state: &SpinState) -> Result<f64> {
    check_len(topology, state)?;
    let spins = state.spins();
    let field_term: f64 = topology
        .fields()
        .iter()
        .zip(spins)
        .map(|(h, &a)| h * f64::from(a))
        .sum();
    let coupling_term: f64 = topology
        .edges()
        .iter()
        .map(|e| e.coupling * f64::from(spins[e.i] * spins[e.j]))
        .sum();
    Ok(-field_term - coupling_term)
}

/// `H_i + sum_{j ~ i} s_ij A_j`, half the energy cost of flipping dipole `i` from `+1` to `-1`.
pub fn local_field(topology: &Topology, state: &SpinState, i: usize) -> Result<f64> {
    check_len(topology, state)?;
    if i >= topology.n() {
        return Err(Error::NodeOutOfRange {
            node: i,
            n: topology.n(),
        });
    }
    Ok(topology.local_field_raw(state.spins(), i))
}

/// Probability that an excited dipole with local field `delta` is redrawn as `+1`.
///
/// Equal to `logistic(2 * beta * delta)`. Only non-positive exponents are
/// ever evaluated, so the result stays finite for any finite input.
#[inline]
pub fn heat_bath_up_probability(delta: f64, beta: f64) -> f64 {
    let x = 2.0 * beta * delta;
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

pub fn magnetization(state: &SpinState) -> i64 {
    state.magnetization()
}

/// The stored `+1` bit is lost once the majority is gone.
pub fn is_failed(state: &SpinState, params: &ModelParams) -> bool {
    failed_magnetization(state.magnetization(), params.tie_is_failure)
}

#[inline]
pub(crate) fn failed_magnetization(m: i64, tie_is_failure: bool) -> bool {
    m < 0 || (m == 0 && tie_is_failure)
}
