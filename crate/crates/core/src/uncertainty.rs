//! Uncertainties product and the Schrödinger / Heisenberg relations.
//!
//! The Schrödinger bound is evaluated as `Δp·Δq ≥ |R|` with `R = <δp δq>` the
//! full complex correlator. Both sides carry units of action.

use serde::{Deserialize, Serialize};

use crate::state::{MomentSet, PhysicalConstants};

/// Saturation tolerance in units of `hbar` for the closed-form and quadrature routes.
pub const SATURATION_TOLERANCE: f64 = 1e-9;
/// Saturation tolerance in units of `hbar` for the truncated Fock route.
pub const FOCK_SATURATION_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    /// `Δp·Δq`
    pub up: f64,
    /// `|R|`
    pub corr_mag: f64,
    /// `up - corr_mag`
    pub sur_gap: f64,
    /// `up - hbar/2`
    pub hur_gap: f64,
    pub saturated: bool,
}

/// Evaluates both relations with the default saturation tolerance `1e-9 hbar`.
pub fn evaluate_sur(moments: &MomentSet, constants: &PhysicalConstants) -> UncertaintyReport {
    evaluate_sur_with_tolerance(moments, constants, SATURATION_TOLERANCE)
}

/// `tolerance` is relative to `hbar`.
pub fn evaluate_sur_with_tolerance(
    moments: &MomentSet,
    constants: &PhysicalConstants,
    tolerance: f64,
) -> UncertaintyReport {
    let up = (moments.var_p * moments.var_q).sqrt();
    let corr_mag = moments.correlator.norm();
    let sur_gap = up - corr_mag;
    UncertaintyReport {
        up,
        corr_mag,
        sur_gap,
        hur_gap: up - quantum_influence_measure(constants),
        saturated: sur_gap.abs() <= tolerance * constants.hbar,
    }
}

/// `J0 = hbar / 2`, the Heisenberg floor reached by the cold vacuum.
pub fn quantum_influence_measure(constants: &PhysicalConstants) -> f64 {
    constants.hbar / 2.0
}
