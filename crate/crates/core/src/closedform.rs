//! Closed-form retention times for the four three-dipole (and single-dipole)
//! reference topologies.
//!
//! Inputs are dimensionless: `beta_h = beta * H` and `beta_s = beta * s_f`.
//! Results are expected event counts of the embedded jump chain; divide by
//! `n` for the time in units of `1/lambda0`.
//!
//! The triangle and the three uncoupled dipoles are lumped by the number of
//! `+1` dipoles (states 3, 2, 1). The path `0 - 1 - 2` is lumped by
//! `(middle up, boundaries up)`, transient states `(1,2)`, `(0,2)`, `(1,1)`.
//! Complementary probabilities such as `1 - p_33` are formed from the
//! outgoing terms directly so no cancellation occurs at large coupling.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::heat_bath_up_probability;
use crate::topology::Topology;

/// Denominators below this are treated as zero and yield `+inf`.
pub const DENOMINATOR_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormInputs {
    pub beta_h: f64,
    pub beta_s: f64,
}

impl ClosedFormInputs {
    pub fn new(beta_h: f64, beta_s: f64) -> Result<Self> {
        if !(beta_h.is_finite() && beta_s.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "closed-form inputs must be finite, got beta_h={beta_h}, beta_s={beta_s}"
            )));
        }
        Ok(Self { beta_h, beta_s })
    }
}

// Heat-bath probability of landing on +1 given a dimensionless local field.
fn up(beta_delta: f64) -> f64 {
    heat_bath_up_probability(beta_delta, 1.0)
}

fn down(beta_delta: f64) -> f64 {
    heat_bath_up_probability(-beta_delta, 1.0)
}

fn guarded_ratio(numerator: f64, denominator: f64) -> f64 {
    if denominator < DENOMINATOR_FLOOR {
        f64::INFINITY
    } else {
        numerator / denominator
    }
}

/// `e^{2 beta_h} + 1`, the mean of a geometric number of trials with success
/// probability `p_{1,-1}`.
pub fn tau_single(beta_h: f64) -> f64 {
    (2.0 * beta_h).exp() + 1.0
}

/// `(1 + e^{2 beta_h})^2 / 2 + 2 (1 + e^{2 beta_h})`.
pub fn tau_three_uncoupled(beta_h: f64) -> f64 {
    let x = 1.0 + (2.0 * beta_h).exp();
    0.5 * x * x + 2.0 * x
}

/// Lumped transition probabilities of the triangle (and, at zero coupling,
/// of three uncoupled dipoles). `p_ab` moves from `a` to `b` up-spins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleTransitions {
    pub p32: f64,
    pub p33: f64,
    pub p21: f64,
    pub p22: f64,
    pub p23: f64,
}

impl TriangleTransitions {
    pub fn new(beta_h: f64, beta_s: f64) -> Self {
        // all up: every dipole sees H + 2s
        let p32 = down(beta_h + 2.0 * beta_s);
        // two up: an up dipole sees H + s - s, the down one sees H + 2s
        let p21 = 2.0 / 3.0 * down(beta_h);
        let p23 = 1.0 / 3.0 * up(beta_h + 2.0 * beta_s);
        Self {
            p32,
            p33: 1.0 - p32,
            p21,
            p22: 1.0 - p21 - p23,
            p23,
        }
    }

    /// `(p32 - p22 + 1) / ((1 - p33)(1 - p22) - p32 p23)`.
    ///
    /// With `1 - p33 = p32` and `1 - p22 = p21 + p23` the denominator is
    /// exactly `p32 p21`, which is what gets evaluated.
    pub fn tau(&self) -> f64 {
        let numerator = self.p32 + self.p21 + self.p23;
        let denominator = self.p32 * self.p21;
        guarded_ratio(numerator, denominator)
    }
}

pub fn tau_triangle(beta_h: f64, beta_s: f64) -> f64 {
    TriangleTransitions::new(beta_h, beta_s).tau()
}

/// Transition probabilities of the path graph between the lumped states
/// `(middle up, boundaries up)`. Self-loops are the complements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearTransitions {
    /// `(1,2) -> (0,2)`: the middle dipole falls.
    pub from12_to02: f64,
    /// `(1,2) -> (1,1)`: a boundary dipole falls.
    pub from12_to11: f64,
    /// `(0,2) -> (0,1)`: a boundary dipole falls next to a fallen middle.
    pub from02_to01: f64,
    /// `(0,2) -> (1,2)`: the middle recovers.
    pub from02_to12: f64,
    /// `(1,1) -> (0,1)`: the middle falls.
    pub from11_to01: f64,
    /// `(1,1) -> (1,0)`: the remaining boundary dipole falls.
    pub from11_to10: f64,
    /// `(1,1) -> (1,2)`: the fallen boundary dipole recovers.
    pub from11_to12: f64,
}

impl LinearTransitions {
    pub fn new(beta_h: f64, beta_s: f64) -> Self {
        let (h, s) = (beta_h, beta_s);
        Self {
            from12_to02: 1.0 / 3.0 * down(h + 2.0 * s),
            from12_to11: 2.0 / 3.0 * down(h + s),
            from02_to01: 2.0 / 3.0 * down(h - s),
            from02_to12: 1.0 / 3.0 * up(h + 2.0 * s),
            from11_to01: 1.0 / 3.0 * down(h),
            from11_to10: 1.0 / 3.0 * down(h + s),
            from11_to12: 1.0 / 3.0 * up(h + s),
        }
    }

    pub fn p12_12(&self) -> f64 {
        1.0 - self.from12_to02 - self.from12_to11
    }

    pub fn p02_02(&self) -> f64 {
        1.0 - self.from02_to01 - self.from02_to12
    }

    pub fn p11_11(&self) -> f64 {
        1.0 - self.from11_to01 - self.from11_to10 - self.from11_to12
    }

    /// Expected events from `(1,2)` by eliminating `(1,1)` and `(0,2)`:
    ///
    /// ```text
    ///          a/c + b/d + 1
    /// tau = -------------------------------
    ///        a + b - a e / c - b f / d
    /// ```
    ///
    /// with `a = p(1,2 -> 1,1)`, `b = p(1,2 -> 0,2)`, `c = 1 - p(1,1 -> 1,1)`,
    /// `d = 1 - p(0,2 -> 0,2)`, `e = p(1,1 -> 1,2)`, `f = p(0,2 -> 1,2)`.
    pub fn tau(&self) -> f64 {
        let a = self.from12_to11;
        let b = self.from12_to02;
        let c = self.from11_to01 + self.from11_to10 + self.from11_to12;
        let d = self.from02_to01 + self.from02_to12;
        let numerator = a / c + b / d + 1.0;
        // a - a e / c = a (c - e) / c, and c - e, d - f are the failure moves
        let denominator = a * (self.from11_to01 + self.from11_to10) / c + b * self.from02_to01 / d;
        guarded_ratio(numerator, denominator)
    }
}

pub fn tau_linear(beta_h: f64, beta_s: f64) -> f64 {
    LinearTransitions::new(beta_h, beta_s).tau()
}

/// `tau_triangle / tau_linear`.
///
/// For large `beta_s` this grows like `e^{2 beta_s}` (the triangle's extra
/// edge doubles the exponent), but with an `h`-dependent prefactor: at
/// `beta_h = 0` the ratio approaches `(4/9) e^{2 beta_s}`.
pub fn tau_ratio_triangle_over_linear(beta_h: f64, beta_s: f64) -> f64 {
    tau_triangle(beta_h, beta_s) / tau_linear(beta_h, beta_s)
}

/// The reference topologies with a closed-form retention time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedTopology {
    Single,
    Uncoupled3,
    Triangle,
    Linear3,
}

impl NamedTopology {
    pub const ALL: [NamedTopology; 4] = [
        NamedTopology::Single,
        NamedTopology::Uncoupled3,
        NamedTopology::Triangle,
        NamedTopology::Linear3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedTopology::Single => "single",
            NamedTopology::Uncoupled3 => "uncoupled3",
            NamedTopology::Triangle => "triangle",
            NamedTopology::Linear3 => "linear3",
        }
    }

    pub fn n(self) -> usize {
        match self {
            NamedTopology::Single => 1,
            _ => 3,
        }
    }

    /// The graph with dimensionless field and coupling, to be used with `beta = 1`.
    pub fn topology(self, beta_h: f64, beta_s: f64) -> Topology {
        match self {
            NamedTopology::Single => Topology::single(beta_h),
            NamedTopology::Uncoupled3 => Topology::uncoupled3(beta_h),
            NamedTopology::Triangle => Topology::triangle(beta_h, beta_s),
            NamedTopology::Linear3 => Topology::linear3(beta_h, beta_s),
        }
    }

    /// Closed-form expected event count; `beta_s` is ignored by the uncoupled cases.
    pub fn tau(self, inputs: ClosedFormInputs) -> f64 {
        let ClosedFormInputs { beta_h, beta_s } = inputs;
        match self {
            NamedTopology::Single => tau_single(beta_h),
            NamedTopology::Uncoupled3 => tau_three_uncoupled(beta_h),
            NamedTopology::Triangle => tau_triangle(beta_h, beta_s),
            NamedTopology::Linear3 => tau_linear(beta_h, beta_s),
        }
    }
}

impl fmt::Display for NamedTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedTopology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| {
            Error::Input(format!(
                "unknown topology `{s}` (expected single, uncoupled3, triangle or linear3)"
            ))
        })
    }
}
