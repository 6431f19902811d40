//! Moments, correlators and uncertainty relations of the arbitrary-vacuum
//! family of Gaussian states.
//!
//! Every state `psi_alpha` of the family is annihilated by
//! `p - i gamma e^{i alpha} q`. The crate computes its second moments along
//! three independent routes and checks that they agree:
//!
//! * [`state`]: closed-form expressions;
//! * [`quadrature`]: numerical integration of the wavefunction;
//! * [`fock`]: truncated ladder-operator matrices, with the state found as
//!   the smallest singular vector of the annihilation condition.
//!
//! [`uncertainty`] evaluates the Schrödinger and Heisenberg relations on any
//! route's moments, [`thermo`] splits the oscillator energy, and [`sweep`]
//! drives whole `(gamma, alpha)` grids for the `arbvac` command-line tool.
//!
//! ```
//! use arbvac::{closed_form_moments, evaluate_sur, make_state, PhysicalConstants, VacuumParameters};
//!
//! let constants = PhysicalConstants::default();
//! let state = make_state(VacuumParameters::new(1.0, std::f64::consts::FRAC_PI_3)?, constants)?;
//! let moments = closed_form_moments(&state);
//! let rel = evaluate_sur(&moments, &constants);
//! assert!(rel.saturated);
//! assert!((rel.hur_gap - 0.5).abs() < 1e-12);
//! # Ok::<(), arbvac::Error>(())
//! ```

pub mod error;
pub mod fock;
pub mod quadrature;
pub mod state;
pub mod sweep;
pub mod thermo;
pub mod uncertainty;

#[cfg(doctest)]
mod book;

pub use error::{Error, Result};
pub use fock::{
    bogoliubov_coefficients, build_fock, fock_moments, solve_vacuum_vector, BogoliubovPair,
    FockRepresentation, FockStateVector,
};
pub use quadrature::{
    correlator_quad, integrate_density_moment, momentum_variance_quad, quadrature_moments,
    QuadratureReport, QuadratureRule, RuleKind,
};
pub use state::{
    closed_form_moments, delta_q0, make_state, psi_eval, GaussianState, MomentSet,
    PhysicalConstants, Route, VacuumParameters,
};
pub use sweep::{run_sweep, verify, SweepConfig, SweepReport, Verdict};
pub use thermo::{
    classify_state, effective_temperature, energy_decomposition, EnergyReport, StateClassification,
    StateKind,
};
pub use uncertainty::{evaluate_sur, quantum_influence_measure, UncertaintyReport};
