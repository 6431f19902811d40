//! Numerical-integration route for the moments and the correlator.
//!
//! Two rules are available. Gauss-Hermite is the default: after mapping
//! `q = s x` with `s = sqrt(2) * width`, every integrand of the family is a
//! polynomial times `exp(-x^2)` and the rule is exact up to round-off. The
//! adaptive trapezoid on `[-10 width, 10 width]` shares nothing with it beyond
//! the integrand and serves as the cross-check.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{GaussianState, MomentSet, Route};

/// Default absolute tolerance on the estimated integration error.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_GH_NODES: usize = 64;
pub const MAX_GH_NODES: usize = 256;
pub const DEFAULT_TRAPEZOID_INTERVALS: usize = 16;
pub const MAX_TRAPEZOID_INTERVALS: usize = 1 << 16;
/// Half-width of the trapezoid domain in units of the density width.
pub const TRAPEZOID_HALF_WIDTH: f64 = 10.0;
/// Finite-difference step for the derivative cross-check.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    GaussHermite,
    AdaptiveTrapezoid,
}

/// Integration rule. `node_count` is the starting resolution (nodes for
/// Gauss-Hermite, intervals for the trapezoid); it is doubled until the
/// error estimate drops below `tolerance` or `max_node_count` is reached.
/// `scale` multiplies the state's natural width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub node_count: usize,
    pub scale: f64,
    pub tolerance: f64,
    pub max_node_count: usize,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule::gauss_hermite(DEFAULT_GH_NODES)
    }
}

impl QuadratureRule {
    pub fn gauss_hermite(node_count: usize) -> Self {
        QuadratureRule {
            kind: RuleKind::GaussHermite,
            node_count,
            scale: 1.0,
            tolerance: DEFAULT_TOLERANCE,
            max_node_count: MAX_GH_NODES.max(node_count),
        }
    }

    pub fn adaptive_trapezoid() -> Self {
        QuadratureRule {
            kind: RuleKind::AdaptiveTrapezoid,
            node_count: DEFAULT_TRAPEZOID_INTERVALS,
            scale: 1.0,
            tolerance: DEFAULT_TOLERANCE,
            max_node_count: MAX_TRAPEZOID_INTERVALS,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_count < 2 {
            return Err(Error::config("node_count", "must be at least 2"));
        }
        if self.max_node_count < self.node_count {
            return Err(Error::config("max_node_count", "must not be below node_count"));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::config("scale", "must be finite and positive"));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::config("tolerance", "must be finite and positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureReport {
    pub value: Complex64,
    pub est_error: f64,
    pub node_count_used: usize,
}

/// Gauss-Hermite nodes and weights for `∫ exp(-x^2) f(x) dx`.
///
/// `scaled_weights[i] = weights[i] * exp(nodes[i]^2)` is computed directly in
/// log space, so integrands that already carry their Gaussian factor can be
/// summed without overflow.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub scaled_weights: Vec<f64>,
}

impl GaussHermite {
    /// Nodes seeded by the eigenvalues of the Jacobi matrix, then polished by
    /// Newton iteration on the orthonormal Hermite recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Hermite rule needs at least one node");
        let nf = n as f64;
        let pim4 = PI.powf(-0.25);
        let jacobi = DMatrix::<f64>::from_fn(n, n, |r, c| {
            if r.abs_diff(c) == 1 {
                (r.max(c) as f64 / 2.0).sqrt()
            } else {
                0.0
            }
        });
        let mut seeds: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
        seeds.sort_by(|a, b| b.total_cmp(a));

        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let mut scaled_weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut z = seeds[i];
            for _ in 0..20 {
                let (pn, pm) = hermite_orthonormal(n, z, pim4);
                let dz = pn / ((2.0 * nf).sqrt() * pm);
                z -= dz;
                if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            if n % 2 == 1 && i == n / 2 {
                z = 0.0;
            }
            let (_, pm) = hermite_orthonormal(n, z, pim4);
            // w = 1 / (n p_{n-1}(z)^2)
            let log_w = -(nf.ln() + 2.0 * pm.abs().ln());
            nodes[i] = z;
            nodes[n - 1 - i] = -z;
            weights[i] = log_w.exp();
            weights[n - 1 - i] = weights[i];
            scaled_weights[i] = (log_w + z * z).exp();
            scaled_weights[n - 1 - i] = scaled_weights[i];
        }
        GaussHermite {
            nodes,
            weights,
            scaled_weights,
        }
    }

    /// Shared table for `n` nodes, built once per process.
    pub fn cached(n: usize) -> Arc<GaussHermite> {
        static TABLES: OnceLock<Mutex<HashMap<usize, Arc<GaussHermite>>>> = OnceLock::new();
        let mut tables = TABLES
            .get_or_init(Default::default)
            .lock()
            .unwrap_or_else(|e| e.into_inner());
        tables.entry(n).or_insert_with(|| Arc::new(GaussHermite::new(n))).clone()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫ exp(-x^2) f(x) dx`.
    pub fn integrate_weighted<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// `∫ f(x) dx` for integrands that decay like `exp(-x^2)`.
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.scaled_weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Returns `(p_n(x), p_{n-1}(x))` for the orthonormal Hermite polynomials.
fn hermite_orthonormal(n: usize, x: f64, p0: f64) -> (f64, f64) {
    let mut p1 = p0;
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = x * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, p2)
}

fn gauss_hermite_integral<F>(width: f64, rule: &QuadratureRule, f: &F) -> Result<QuadratureReport>
where
    F: Fn(f64) -> Complex64,
{
    let s = std::f64::consts::SQRT_2 * width * rule.scale;
    let eval = |n: usize| s * GaussHermite::cached(n).integrate(|x| f(s * x));
    let mut n = rule.node_count;
    let mut last_est;
    loop {
        let fine = eval(n);
        let coarse = eval(n / 2);
        let est = (fine - coarse).norm();
        if est <= rule.tolerance {
            return Ok(QuadratureReport {
                value: fine,
                est_error: est,
                node_count_used: n,
            });
        }
        last_est = est;
        if n * 2 > rule.max_node_count {
            break;
        }
        n *= 2;
    }
    Err(Error::Convergence {
        route: "quadrature (gauss-hermite)",
        estimate: last_est,
        tolerance: rule.tolerance,
    })
}

fn trapezoid_integral<F>(width: f64, rule: &QuadratureRule, f: &F) -> Result<QuadratureReport>
where
    F: Fn(f64) -> Complex64,
{
    let half = TRAPEZOID_HALF_WIDTH * width * rule.scale;
    let (a, b) = (-half, half);
    let mut n = rule.node_count;
    let mut h = (b - a) / n as f64;
    let mut sum: Complex64 = 0.5 * (f(a) + f(b));
    sum += (1..n).map(|k| f(a + k as f64 * h)).sum::<Complex64>();
    let mut prev = sum * h;
    let mut last_est = f64::INFINITY;
    while 2 * n <= rule.max_node_count {
        let mids: Complex64 = (0..n).map(|k| f(a + (k as f64 + 0.5) * h)).sum();
        sum += mids;
        n *= 2;
        h *= 0.5;
        let cur = sum * h;
        last_est = (cur - prev).norm();
        if last_est <= rule.tolerance {
            return Ok(QuadratureReport {
                value: cur,
                est_error: last_est,
                node_count_used: n + 1,
            });
        }
        prev = cur;
    }
    Err(Error::Convergence {
        route: "quadrature (adaptive trapezoid)",
        estimate: last_est,
        tolerance: rule.tolerance,
    })
}

/// `∫ f(q) dq` over the real line for an integrand concentrated on the state's density.
pub fn integrate<F>(state: &GaussianState, rule: &QuadratureRule, f: F) -> Result<QuadratureReport>
where
    F: Fn(f64) -> Complex64,
{
    rule.validate()?;
    let width = state.density_width();
    match rule.kind {
        RuleKind::GaussHermite => gauss_hermite_integral(width, rule, &f),
        RuleKind::AdaptiveTrapezoid => trapezoid_integral(width, rule, &f),
    }
}

/// `∫ q^power |psi(q)|^2 dq` for `power` in `{0, 2, 4}`.
pub fn integrate_density_moment(
    state: &GaussianState,
    power: u32,
    rule: &QuadratureRule,
) -> Result<QuadratureReport> {
    if !matches!(power, 0 | 2 | 4) {
        return Err(Error::Domain {
            param: "power",
            value: power as f64,
            reason: "density moments are available for powers 0, 2 and 4",
        });
    }
    integrate(state, rule, |q| {
        let psi = state.psi(q);
        psi.conj() * psi * q.powi(power as i32)
    })
}

/// `hbar^2 ∫ |d psi/dq|^2 dq` with the analytic derivative.
pub fn momentum_variance_quad(state: &GaussianState, rule: &QuadratureRule) -> Result<QuadratureReport> {
    let hbar2 = state.constants.hbar.powi(2);
    integrate(state, rule, |q| {
        let d = state.dpsi(q);
        hbar2 * d.conj() * d
    })
}

/// Same integral with a central difference of step `step` in place of the analytic derivative.
pub fn momentum_variance_finite_difference(
    state: &GaussianState,
    rule: &QuadratureRule,
    step: f64,
) -> Result<QuadratureReport> {
    let hbar2 = state.constants.hbar.powi(2);
    integrate(state, rule, |q| {
        let d = (state.psi(q + step) - state.psi(q - step)) / (2.0 * step);
        hbar2 * d.conj() * d
    })
}

/// `∫ psi*(q) (hbar/i) d/dq [q psi(q)] dq`, i.e. `<psi| p q |psi>`.
pub fn correlator_quad(state: &GaussianState, rule: &QuadratureRule) -> Result<QuadratureReport> {
    let minus_i_hbar = Complex64::new(0.0, -state.constants.hbar);
    integrate(state, rule, |q| {
        let psi = state.psi(q);
        let d_qpsi = psi + q * state.dpsi(q);
        minus_i_hbar * psi.conj() * d_qpsi
    })
}

/// All second moments from the quadrature route.
pub fn quadrature_moments(state: &GaussianState, rule: &QuadratureRule) -> Result<MomentSet> {
    let var_q = integrate_density_moment(state, 2, rule)?.value.re;
    let var_p = momentum_variance_quad(state, rule)?.value.re;
    let corr = correlator_quad(state, rule)?.value;
    Ok(MomentSet::new(var_q, var_p, corr, Route::Quadrature))
}
