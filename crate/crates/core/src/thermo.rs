//! Oscillator energies in an arbitrary-vacuum state and the cold/arbitrary
//! classification.
//!
//! The state family is the ground-state family of an oscillator with
//! `gamma = m ω`, so `ω = gamma / m`. With the default `m = 1` this is the
//! plain `γ → ω` identification and `⟨K⟩ = ⟨Π⟩ = ħγ/4` at `alpha = 0`.

use serde::{Deserialize, Serialize};

use crate::state::{MomentSet, PhysicalConstants, VacuumParameters};

/// `|alpha|` at or below this counts as the cold vacuum.
pub const CLASSIFICATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub kinetic: f64,
    pub potential: f64,
    pub total: f64,
    pub zero_point: f64,
    /// `total / zero_point`, equal to `1 / cos(alpha)`.
    pub excess_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    ColdVacuum,
    ArbitraryVacuum,
}

impl StateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::ColdVacuum => "cold_vacuum",
            StateKind::ArbitraryVacuum => "arbitrary_vacuum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateClassification {
    pub kind: StateKind,
    pub alpha: f64,
    pub note: String,
}

/// Oscillator frequency `ω = γ / m`.
pub fn frequency(params: &VacuumParameters, constants: &PhysicalConstants) -> f64 {
    params.gamma / constants.mass
}

pub fn energy_decomposition(
    moments: &MomentSet,
    params: &VacuumParameters,
    constants: &PhysicalConstants,
) -> EnergyReport {
    let m = constants.mass;
    let omega = frequency(params, constants);
    let kinetic = moments.var_p / (2.0 * m);
    let potential = 0.5 * m * omega * omega * moments.var_q;
    let total = kinetic + potential;
    let zero_point = 0.5 * constants.hbar * omega;
    EnergyReport {
        kinetic,
        potential,
        total,
        zero_point,
        excess_ratio: total / zero_point,
    }
}

pub fn classify_state(params: &VacuumParameters) -> StateClassification {
    classify_alpha(params.alpha)
}

pub fn classify_alpha(alpha: f64) -> StateClassification {
    if alpha.abs() <= CLASSIFICATION_TOLERANCE {
        StateClassification {
            kind: StateKind::ColdVacuum,
            alpha,
            note: "equilibrium with the cold vacuum; Heisenberg-saturated".into(),
        }
    } else {
        StateClassification {
            kind: StateKind::ArbitraryVacuum,
            alpha,
            note: "SUR-saturated, Heisenberg-strict; thermal-like per Umezawa".into(),
        }
    }
}

/// Temperature at which a thermal oscillator of frequency `ω` would carry the
/// same energy excess, i.e. the root of `coth(ħω / 2 k_B T) = excess_ratio`.
///
/// Returns `None` when the ratio is one (the `T → 0` limit). This mapping is a
/// diagnostic extension and plays no part in the saturation checks.
pub fn effective_temperature(
    energy: &EnergyReport,
    params: &VacuumParameters,
    constants: &PhysicalConstants,
) -> Option<f64> {
    let ratio = energy.excess_ratio;
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(ratio > 1.0) || !ratio.is_finite() {
        return None;
    }
    let x = solve_coth(ratio);
    let omega = frequency(params, constants);
    Some(constants.hbar * omega / (2.0 * constants.boltzmann * x))
}

/// Bisection for `coth(x) = ratio`, `ratio > 1`, to `1e-14` relative in `x`.
fn solve_coth(ratio: f64) -> f64 {
    let g = |x: f64| 1.0 / x.tanh() - ratio;
    // coth(x) > 1/x, so g > 0 at x = 1/ratio
    let mut lo = 1.0 / ratio;
    let mut hi = lo;
    while g(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}
