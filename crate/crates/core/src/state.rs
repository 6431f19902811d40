//! The arbitrary-vacuum state family.
//!
//! Every member is a centered complex Gaussian
//!
//! ```text
//! psi(q) = N * exp(-c q^2),   c = exp(i alpha) / (4 dq0^2),   dq0^2 = hbar / (2 gamma)
//! ```
//!
//! which solves `(p - i gamma e^{i alpha} q) psi = 0` in the coordinate
//! representation. `alpha = 0` is the cold vacuum (the ordinary oscillator
//! ground state); any other `alpha` in `(-pi/2, pi/2)` is an arbitrary vacuum.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters closer than this to `±pi/2` are rejected rather than clamped.
pub const ALPHA_EDGE_MARGIN: f64 = 1e-9;

/// Unit system for every computation. Defaults to `hbar = k_B = m = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub boltzmann: f64,
    pub mass: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            hbar: 1.0,
            boltzmann: 1.0,
            mass: 1.0,
        }
    }
}

impl PhysicalConstants {
    pub fn new(hbar: f64, boltzmann: f64, mass: f64) -> Result<Self> {
        let c = PhysicalConstants {
            hbar,
            boltzmann,
            mass,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (param, value) in [
            ("hbar", self.hbar),
            ("boltzmann", self.boltzmann),
            ("mass", self.mass),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Domain {
                    param,
                    value,
                    reason: "must be finite and strictly positive",
                });
            }
        }
        Ok(())
    }
}

/// The `(gamma, alpha)` pair selecting one member of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VacuumParameters {
    /// Stiffness, `gamma > 0`.
    pub gamma: f64,
    /// Phase angle in radians, restricted to `(-pi/2, pi/2)`.
    pub alpha: f64,
}

impl VacuumParameters {
    pub fn new(gamma: f64, alpha: f64) -> Result<Self> {
        let p = VacuumParameters { gamma, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_gamma(self.gamma)?;
        check_alpha(self.alpha)
    }
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            param: "gamma",
            value: gamma,
            reason: "must be finite and strictly positive",
        })
    }
}

/// `cos(alpha) > 0` is required for normalizability; points within
/// [`ALPHA_EDGE_MARGIN`] of the poles are refused as well.
pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha.abs() < FRAC_PI_2 - ALPHA_EDGE_MARGIN && alpha.cos() > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            param: "alpha",
            value: alpha,
            reason: "cos(alpha) must be positive; alpha must lie in (-pi/2, pi/2)",
        })
    }
}

/// Normalized wavefunction `psi(q) = norm * exp(-exponent_coeff * q^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianState {
    pub params: VacuumParameters,
    pub constants: PhysicalConstants,
    pub norm: f64,
    pub exponent_coeff: Complex64,
}

/// Which computation route produced a [`MomentSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ClosedForm,
    Quadrature,
    Fock,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::ClosedForm => "closed_form",
            Route::Quadrature => "quadrature",
            Route::Fock => "fock",
        }
    }
}

/// Centered second moments from one route.
///
/// `correlator` is `<psi| p q |psi>` with `p = (hbar/i) d/dq`; its imaginary
/// part is `-hbar/2` for every pure state of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    pub var_q: f64,
    pub var_p: f64,
    pub correlator: Complex64,
    pub cov_sym: f64,
    pub route: Route,
}

impl MomentSet {
    /// Builds a moment set with `cov_sym` taken from the correlator.
    pub fn new(var_q: f64, var_p: f64, correlator: Complex64, route: Route) -> Self {
        MomentSet {
            var_q,
            var_p,
            correlator,
            cov_sym: correlator.re,
            route,
        }
    }
}

/// Squared width of the cold vacuum, `hbar / (2 gamma)`.
pub fn delta_q0(params: &VacuumParameters, constants: &PhysicalConstants) -> Result<f64> {
    check_gamma(params.gamma)?;
    constants.validate()?;
    Ok(constants.hbar / (2.0 * params.gamma))
}

pub fn make_state(params: VacuumParameters, constants: PhysicalConstants) -> Result<GaussianState> {
    params.validate()?;
    constants.validate()?;
    let dq0_sq = delta_q0(&params, &constants)?;
    let cos_a = params.alpha.cos();
    let norm = (2.0 * PI * dq0_sq / cos_a).powf(-0.25);
    let exponent_coeff = Complex64::from_polar(1.0, params.alpha) / (4.0 * dq0_sq);
    Ok(GaussianState {
        params,
        constants,
        norm,
        exponent_coeff,
    })
}

impl GaussianState {
    /// Wavefunction amplitude at `q`.
    pub fn psi(&self, q: f64) -> Complex64 {
        self.norm * (-self.exponent_coeff * q * q).exp()
    }

    /// Analytic derivative `d psi / dq = -2 c q psi`.
    pub fn dpsi(&self, q: f64) -> Complex64 {
        -2.0 * self.exponent_coeff * q * self.psi(q)
    }

    /// Standard deviation of `|psi|^2`, read off the exponent rather than the moment formulas.
    pub fn density_width(&self) -> f64 {
        (4.0 * self.exponent_coeff.re).recip().sqrt()
    }
}

pub fn psi_eval(state: &GaussianState, q: f64) -> Complex64 {
    state.psi(q)
}

pub fn closed_form_moments(state: &GaussianState) -> MomentSet {
    let hbar = state.constants.hbar;
    let VacuumParameters { gamma, alpha } = state.params;
    let var_q = hbar / (2.0 * gamma * alpha.cos());
    let var_p = gamma * gamma * var_q;
    let correlator = Complex64::new(-0.5 * hbar * alpha.tan(), -0.5 * hbar);
    MomentSet::new(var_q, var_p, correlator, Route::ClosedForm)
}
