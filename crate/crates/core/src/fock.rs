//! Truncated Fock-space route.
//!
//! The ladder operators are those of the cold vacuum, `a = (p - i gamma q) / sqrt(2 hbar gamma)`,
//! so in this basis
//!
//! ```text
//! p = sqrt(hbar gamma / 2) (a + a†)
//! q = i sqrt(hbar / (2 gamma)) (a - a†)
//! ```
//!
//! and the defining operator of the arbitrary vacuum factors as
//!
//! ```text
//! p - i gamma e^{i alpha} q = sqrt(2 hbar gamma cos alpha) (u a + v a†)
//! u = (1 + e^{i alpha}) / (2 sqrt(cos alpha)),  v = (1 - e^{i alpha}) / (2 sqrt(cos alpha))
//! ```
//!
//! The vacuum vector is obtained as the smallest right-singular vector of
//! the truncated defining operator. The closed-form squeezed-vacuum series is
//! kept separately for cross-checking only.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{check_alpha, check_gamma, MomentSet, PhysicalConstants, Route};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const MIN_DIM: usize = 4;
/// From this truncation on, a vacuum residual above [`RESIDUAL_LIMIT`] is an error.
pub const CONVERGED_DIM: usize = 256;
pub const RESIDUAL_LIMIT: f64 = 1e-6;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct FockRepresentation {
    pub dim: usize,
    pub gamma: f64,
    pub constants: PhysicalConstants,
    pub lower: CMatrix,
    pub raise: CMatrix,
    pub p_op: CMatrix,
    pub q_op: CMatrix,
}

pub fn build_fock(gamma: f64, constants: &PhysicalConstants, dim: usize) -> Result<FockRepresentation> {
    if dim < MIN_DIM {
        return Err(Error::Dimension { dim, min: MIN_DIM });
    }
    check_gamma(gamma)?;
    constants.validate()?;
    let hbar = constants.hbar;
    let lower = CMatrix::from_fn(dim, dim, |r, c| {
        if r + 1 == c {
            Complex64::new((c as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let raise = lower.adjoint();
    let p_op = (&lower + &raise) * Complex64::new((hbar * gamma / 2.0).sqrt(), 0.0);
    let q_op = (&lower - &raise) * (I * (hbar / (2.0 * gamma)).sqrt());
    Ok(FockRepresentation {
        dim,
        gamma,
        constants: *constants,
        lower,
        raise,
        p_op,
        q_op,
    })
}

impl FockRepresentation {
    /// Frobenius norm of `[q, p] - i hbar` on the leading `(dim-1)` block.
    pub fn commutator_residual(&self) -> f64 {
        let comm = &self.q_op * &self.p_op - &self.p_op * &self.q_op;
        let k = self.dim - 1;
        let ihbar = I * self.constants.hbar;
        let mut acc = 0.0;
        for r in 0..k {
            for c in 0..k {
                let target = if r == c { ihbar } else { Complex64::new(0.0, 0.0) };
                acc += (comm[(r, c)] - target).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// The truncated operator `p - i gamma e^{i alpha} q`.
    pub fn vacuum_operator(&self, alpha: f64) -> CMatrix {
        let k = I * Complex64::from_polar(self.gamma, alpha);
        &self.p_op - &self.q_op * k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovPair {
    pub u: Complex64,
    pub v: Complex64,
}

impl BogoliubovPair {
    /// `|u|^2 - |v|^2`, which is one for a canonical transformation.
    pub fn normalization(&self) -> f64 {
        self.u.norm_sqr() - self.v.norm_sqr()
    }

    /// Ratio `beta` with `c_{2n} ∝ beta^n sqrt((2n)!) / (2^n n!)`.
    pub fn squeeze_ratio(&self) -> Complex64 {
        -self.v / self.u
    }
}

pub fn bogoliubov_coefficients(alpha: f64) -> Result<BogoliubovPair> {
    check_alpha(alpha)?;
    let e = Complex64::from_polar(1.0, alpha);
    let d = 2.0 * alpha.cos().sqrt();
    Ok(BogoliubovPair {
        u: (1.0 + e) / d,
        v: (1.0 - e) / d,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockStateVector {
    pub coeffs: CVector,
    pub alpha: f64,
    /// `‖(p - i gamma e^{i alpha} q) x‖` for the returned vector.
    pub residual: f64,
}

impl FockStateVector {
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Summed weight on odd photon numbers.
    pub fn odd_weight(&self) -> f64 {
        self.coeffs.iter().skip(1).step_by(2).map(|c| c.norm_sqr()).sum()
    }
}

/// Rotates `x` so that its first nonzero-ish component is real and positive, then normalizes.
fn fix_phase(mut x: CVector) -> CVector {
    let lead = x[0];
    if lead.norm() > 0.0 {
        let phase = lead.conj() / lead.norm();
        x *= phase;
    }
    let n = x.norm();
    x /= Complex64::new(n, 0.0);
    x
}

pub fn residual(op: &CMatrix, x: &CVector) -> f64 {
    (op * x).norm()
}

/// Unit vector minimizing `‖(p - i gamma e^{i alpha} q) x‖`, with `coeffs[0] > 0`.
pub fn solve_vacuum_vector(rep: &FockRepresentation, alpha: f64) -> Result<FockStateVector> {
    check_alpha(alpha)?;
    let op = rep.vacuum_operator(alpha);
    let svd = op.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("dimension is at least MIN_DIM");
    let x = fix_phase(v_t.row(idx).adjoint());
    let res = residual(&op, &x);
    if rep.dim >= CONVERGED_DIM && res > RESIDUAL_LIMIT {
        return Err(Error::Convergence {
            route: "fock vacuum solve",
            estimate: res,
            tolerance: RESIDUAL_LIMIT,
        });
    }
    Ok(FockStateVector {
        coeffs: x,
        alpha,
        residual: res,
    })
}

/// `‖(u a + v a†) x‖`.
pub fn bogoliubov_residual(rep: &FockRepresentation, pair: &BogoliubovPair, x: &CVector) -> f64 {
    let b = &rep.lower * pair.u + &rep.raise * pair.v;
    residual(&b, x)
}

/// Truncated and renormalized analytic squeezed-vacuum coefficients.
pub fn squeezed_vacuum_series(alpha: f64, dim: usize) -> Result<CVector> {
    let beta = bogoliubov_coefficients(alpha)?.squeeze_ratio();
    let mut c = CVector::zeros(dim);
    c[0] = Complex64::new(1.0, 0.0);
    let mut n = 0;
    while n + 2 < dim {
        let k = n as f64;
        c[n + 2] = c[n] * beta * ((k + 1.0) / (k + 2.0)).sqrt();
        n += 2;
    }
    Ok(fix_phase(c))
}

pub fn fock_moments(rep: &FockRepresentation, vector: &FockStateVector) -> MomentSet {
    let x = &vector.coeffs;
    let qx = &rep.q_op * x;
    let px = &rep.p_op * x;
    let var_q = qx.norm_squared();
    let var_p = px.norm_squared();
    // <x| p q |x> = <p x | q x> for Hermitian p
    let correlator = px.dotc(&qx);
    MomentSet::new(var_q, var_p, correlator, Route::Fock)
}
