//! Expected retention time of one-bit memories built from coupled dipoles.
//!
//! `N` dipoles sit on the nodes of an undirected graph, each holding `+1`
//! or `-1`. Every dipole is excited at Poisson rate `lambda0` and redrawn
//! from the heat bath (Glauber dynamics) given its external field and the
//! couplings to its neighbours. Starting from all `+1`, the retention time
//! is the first time the `+1` majority is lost.
//!
//! Three independent routes compute its expectation:
//!
//! * [`closedform`]: formulas for a single dipole and the three-dipole
//!   uncoupled, triangle and path topologies;
//! * [`exact`]: the absorbing Markov chain on all `2^N` configurations,
//!   solved directly;
//! * [`dynamics`]: Monte Carlo first-passage simulation.
//!
//! ```
//! use glauber_retention::{closedform, exact, ModelParams, Topology};
//!
//! let params = ModelParams::new(1.0).unwrap();
//! let tau = exact::retention_time_exact(&Topology::triangle(0.0, 1.0), &params).unwrap();
//! assert!((tau - closedform::tau_triangle(0.0, 1.0)).abs() < 1e-9 * tau);
//! ```

pub mod cli;
pub mod closedform;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod model;
pub mod topology;

pub use dynamics::{RetentionEstimate, SimulationConfig};
pub use error::{Error, Result};
pub use model::{ModelParams, SpinState};
pub use topology::Topology;
