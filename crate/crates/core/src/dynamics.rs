//! Monte Carlo first-passage simulation of the embedded jump chain.
//!
//! Every dipole is excited by its own Poisson(`lambda0`) clock, so the
//! system sees events at total rate `n * lambda0` whatever its state. The
//! simulation therefore only tracks the sequence of events: each event
//! picks a dipole uniformly and redraws it with the heat-bath rule.
//! Expected wall-clock time is the expected event count divided by
//! `n * lambda0`.
//!
//! Sample `k` of an estimate draws from `ChaCha8Rng::seed_from_u64(seed)`
//! switched to stream `k`, so each trajectory is a pure function of
//! `(seed, k)` and the result does not depend on thread scheduling.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{failed_magnetization, heat_bath_up_probability, ModelParams, SpinState};
use crate::topology::Topology;

pub const DEFAULT_MAX_EVENTS: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationConfig {
    pub seed: u64,
    pub max_events: u64,
    pub n_samples: u64,
}

impl SimulationConfig {
    pub fn new(seed: u64, n_samples: u64) -> Result<Self> {
        Self {
            seed,
            max_events: DEFAULT_MAX_EVENTS,
            n_samples,
        }
        .validated()
    }

    pub fn with_max_events(self, max_events: u64) -> Result<Self> {
        Self { max_events, ..self }.validated()
    }

    fn validated(self) -> Result<Self> {
        if self.max_events == 0 {
            return Err(Error::InvalidParams("max_events must be at least 1".into()));
        }
        if self.n_samples == 0 {
            return Err(Error::InvalidParams("n_samples must be at least 1".into()));
        }
        Ok(self)
    }
}

/// Outcome of one trajectory started from all `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FirstPassage {
    /// Number of events up to and including the one that lost the majority.
    Failed(u64),
    /// The event cap was reached first.
    Censored,
}

impl FirstPassage {
    pub fn events(self) -> Option<u64> {
        match self {
            FirstPassage::Failed(k) => Some(k),
            FirstPassage::Censored => None,
        }
    }
}

/// Mean first-passage event count over the uncensored trajectories.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetentionEstimate {
    pub mean_events: f64,
    /// Sample standard deviation over `sqrt(n_samples - n_censored)`.
    pub std_error: f64,
    pub n_samples: u64,
    pub n_censored: u64,
    /// `mean_events / (n * lambda0)`.
    pub mean_time: f64,
}

/// Random stream used for sample `k` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// One event: excite a uniformly chosen dipole and redraw it from the heat bath.
///
/// Returns the new state and the index of the excited dipole. The redrawn
/// spin may equal the old one; that still counts as an event.
pub fn step<R: Rng + ?Sized>(
    topology: &Topology,
    state: &SpinState,
    params: &ModelParams,
    rng: &mut R,
) -> Result<(SpinState, usize)> {
    if state.len() != topology.n() {
        return Err(Error::DimensionMismatch {
            expected: topology.n(),
            found: state.len(),
        });
    }
    let mut next = state.clone();
    let (i, _) = step_in_place(topology, &mut next, params.beta(), rng);
    Ok((next, i))
}

/// Returns the excited node and the change in magnetization (-2, 0 or +2).
#[inline]
fn step_in_place<R: Rng + ?Sized>(topology: &Topology, state: &mut SpinState, beta: f64, rng: &mut R) -> (usize, i64) {
    let i = rng.random_range(0..topology.n());
    let up = rng.random::<f64>() < heat_bath_up_probability(topology.local_field_raw(state.spins(), i), beta);
    let old = state.get(i);
    state.set(i, up);
    (i, i64::from(state.get(i) - old))
}

fn run_trajectory<R: Rng + ?Sized>(
    topology: &Topology,
    params: &ModelParams,
    max_events: u64,
    rng: &mut R,
) -> FirstPassage {
    let n = topology.n();
    let mut state = SpinState::all_up(n);
    let mut m = n as i64;
    let beta = params.beta();
    let tie = params.tie_is_failure();
    for event in 1..=max_events {
        let (_, dm) = step_in_place(topology, &mut state, beta, rng);
        m += dm;
        if failed_magnetization(m, tie) {
            return FirstPassage::Failed(event);
        }
    }
    FirstPassage::Censored
}

/// Events until the majority is first lost, starting from all `+1`.
///
/// Uses the same stream as sample 0 of [`estimate_retention`] with this seed.
pub fn first_passage_events(topology: &Topology, params: &ModelParams, seed: u64, max_events: u64) -> FirstPassage {
    run_trajectory(topology, params, max_events, &mut sample_rng(seed, 0))
}

/// Runs `config.n_samples` independent trajectories in parallel.
pub fn estimate_retention(
    topology: &Topology,
    params: &ModelParams,
    config: &SimulationConfig,
) -> Result<RetentionEstimate> {
    let outcomes: Vec<FirstPassage> = (0..config.n_samples)
        .into_par_iter()
        .map(|k| run_trajectory(topology, params, config.max_events, &mut sample_rng(config.seed, k)))
        .collect();
    summarize(topology, params, &outcomes)
}

/// Single-threaded twin of [`estimate_retention`]; returns the identical estimate.
pub fn estimate_retention_serial(
    topology: &Topology,
    params: &ModelParams,
    config: &SimulationConfig,
) -> Result<RetentionEstimate> {
    let outcomes: Vec<FirstPassage> = (0..config.n_samples)
        .map(|k| run_trajectory(topology, params, config.max_events, &mut sample_rng(config.seed, k)))
        .collect();
    summarize(topology, params, &outcomes)
}

// Sums are accumulated exactly in integers, so the result is independent of
// summation order.
fn summarize(topology: &Topology, params: &ModelParams, outcomes: &[FirstPassage]) -> Result<RetentionEstimate> {
    let n_samples = outcomes.len() as u64;
    let (mut count, mut sum, mut sum_sq) = (0u64, 0u128, 0u128);
    for k in outcomes.iter().filter_map(|o| o.events()) {
        count += 1;
        sum += u128::from(k);
        sum_sq += u128::from(k) * u128::from(k);
    }
    let n_censored = n_samples - count;
    if count == 0 {
        return Err(Error::NoEstimate { n_censored });
    }

    let m = count as f64;
    let mean_events = sum as f64 / m;
    let std_error = if count > 1 {
        // m * sum_sq - sum^2 = m^2 * (biased variance), exact in integers
        let spread = u128::from(count) * sum_sq - sum * sum;
        let variance = spread as f64 / (m * (m - 1.0));
        (variance / m).sqrt()
    } else {
        0.0
    };

    Ok(RetentionEstimate {
        mean_events,
        std_error,
        n_samples,
        n_censored,
        mean_time: mean_events / (topology.n() as f64 * params.lambda0()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SimulationConfig::new(1, 0).is_err());
        assert!(SimulationConfig::new(1, 1).unwrap().with_max_events(0).is_err());
        assert_eq!(SimulationConfig::new(1, 5).unwrap().max_events, DEFAULT_MAX_EVENTS);
    }

    #[test]
    fn step_changes_at_most_one_spin() {
        let topo = Topology::linear3(0.2, 0.5);
        let params = ModelParams::new(1.0).unwrap();
        let mut rng = sample_rng(3, 0);
        let mut state = SpinState::all_up(3);
        for _ in 0..1000 {
            let (next, i) = step(&topo, &state, &params, &mut rng).unwrap();
            for j in (0..3).filter(|&j| j != i) {
                assert_eq!(next.get(j), state.get(j));
            }
            state = next;
        }
        assert!(step(&topo, &SpinState::all_up(2), &params, &mut rng).is_err());
    }

    #[test]
    fn step_single_dipole_zero_field_is_fair() {
        let topo = Topology::single(0.0);
        let params = ModelParams::new(1.0).unwrap();
        let mut rng = sample_rng(11, 0);
        let trials = 100_000;
        let ups = (0..trials)
            .filter(|_| step(&topo, &SpinState::all_up(1), &params, &mut rng).unwrap().0.get(0) == 1)
            .count();
        // binomial sd = sqrt(n/4) ~ 158
        assert!((ups as f64 - 50_000.0).abs() < 4.0 * 158.2, "{ups}");
    }

    #[test]
    fn step_saturates_with_strong_field() {
        let topo = Topology::single(400.0);
        let params = ModelParams::new(1.0).unwrap();
        let mut rng = sample_rng(5, 0);
        let down = SpinState::from_spins([-1]).unwrap();
        for _ in 0..1000 {
            assert_eq!(step(&topo, &down, &params, &mut rng).unwrap().0.get(0), 1);
        }
    }

    #[test]
    fn first_passage_matches_sample_zero() {
        let topo = Topology::triangle(0.0, 0.5);
        let params = ModelParams::new(1.0).unwrap();
        let fp = first_passage_events(&topo, &params, 99, DEFAULT_MAX_EVENTS);
        let direct = run_trajectory(&topo, &params, DEFAULT_MAX_EVENTS, &mut sample_rng(99, 0));
        assert_eq!(fp, direct);
        assert!(matches!(fp, FirstPassage::Failed(k) if k >= 2));
    }

    #[test]
    fn censoring_is_reported() {
        // strong field: failure within 3 events is essentially impossible
        let topo = Topology::triangle(5.0, 2.0);
        let params = ModelParams::new(1.0).unwrap();
        assert_eq!(first_passage_events(&topo, &params, 1, 3), FirstPassage::Censored);
        let config = SimulationConfig::new(1, 20).unwrap().with_max_events(3).unwrap();
        assert_eq!(
            estimate_retention(&topo, &params, &config),
            Err(Error::NoEstimate { n_censored: 20 })
        );
    }

    #[test]
    fn partial_censoring_excludes_censored_samples() {
        let topo = Topology::single(0.0);
        let params = ModelParams::new(1.0).unwrap();
        let config = SimulationConfig::new(7, 2000).unwrap().with_max_events(2).unwrap();
        let est = estimate_retention(&topo, &params, &config).unwrap();
        // P(T > 2) = 1/4
        assert!(est.n_censored > 400 && est.n_censored < 600, "{est:?}");
        assert!(est.mean_events >= 1.0 && est.mean_events <= 2.0);
    }

    #[test]
    fn summary_statistics_match_direct_formula() {
        let topo = Topology::uncoupled3(0.0);
        let params = ModelParams::default().with_lambda0(2.0).unwrap();
        let outcomes = [
            FirstPassage::Failed(2),
            FirstPassage::Failed(4),
            FirstPassage::Censored,
            FirstPassage::Failed(9),
        ];
        let est = summarize(&topo, &params, &outcomes).unwrap();
        let mean = 5.0;
        let var = ((2.0f64 - mean).powi(2) + (4.0f64 - mean).powi(2) + (9.0f64 - mean).powi(2)) / 2.0;
        assert_eq!(est.mean_events, mean);
        assert!((est.std_error - (var / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(est.n_censored, 1);
        assert_eq!(est.n_samples, 4);
        assert_eq!(est.mean_time, 5.0 / 6.0);
    }
}
