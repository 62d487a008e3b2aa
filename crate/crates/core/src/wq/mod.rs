//! The Lambert-Tsallis function `W_q`: solutions `w` of `w exp_q(w) = z`.
//!
//! On the real line `f(w) = w exp_q(w)` has derivative
//! `exp_q(w)^q (1 + (2 - q) w)`, so for `q < 2` it has a single turning
//! point at `w_b = 1/(q - 2)` and two real branches meet there:
//!
//! * `Principal` is the branch through `w = 0`, on `w >= w_b`;
//! * `Secondary` runs from `w_b` towards the edge of the real domain
//!   (`w = -1/(1 - q)` for `q < 1`, `w -> -inf` for `1 <= q < 2`).
//!
//! For `q >= 2` the map is monotone and only the principal branch exists.
//! Off the real line, [`wq_eval_complex`] enumerates solutions from a fixed
//! grid of Newton seeds.

mod closed;
mod complex;
mod real;

pub use closed::wq_closed_form;

use crate::qdeform::{exp_q, exp_q_real, QError, QValue};
use num_complex::Complex64;
use thiserror::Error;

pub const MAX_ITER: usize = 100;
pub const RESIDUAL_TOL: f64 = 1e-12;
pub const DEDUPE_RTOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchLabel {
    Principal,
    Secondary,
    ComplexSeed(usize),
}

impl std::fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BranchLabel::Principal => f.write_str("principal"),
            BranchLabel::Secondary => f.write_str("secondary"),
            BranchLabel::ComplexSeed(k) => write!(f, "complex:{k}"),
        }
    }
}

/// One evaluation of `W_q(z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WqResult {
    pub w: Complex64,
    pub branch: BranchLabel,
    pub iterations: usize,
    /// `|w exp_q(w) - z|`
    pub residual: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WqError {
    #[error("z = {z} is outside the domain of the {branch} branch for q = {q}")]
    Domain { q: f64, z: f64, branch: BranchLabel },
    #[error("q = {0} has no secondary real branch")]
    BranchUnavailable(f64),
    #[error("no closed form for q = {0}; supported values are 1/2, 4/3, 3/2 and 2")]
    UnsupportedQ(f64),
    #[error("iteration budget exhausted (q = {q}, z = {z}, residual {residual:e})")]
    NoConvergence { q: f64, z: f64, residual: f64 },
    #[error("no Newton seed converged for q = {q}, z = {z}")]
    EmptyResult { q: f64, z: Complex64 },
    #[error("solution is not representable in double precision (q = {q}, z = {z})")]
    Overflow { q: f64, z: f64 },
    #[error("non-finite argument")]
    NonFinite,
    #[error(transparent)]
    Q(#[from] QError),
}

/// Where the two real branches meet.
///
/// When `exists` is false the coordinates are NaN.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchPoint {
    pub z_b: f64,
    pub w_b: f64,
    pub exists: bool,
}

impl BranchPoint {
    const NONE: BranchPoint = BranchPoint {
        z_b: f64::NAN,
        w_b: f64::NAN,
        exists: false,
    };

    pub fn get(&self) -> Option<(f64, f64)> {
        self.exists.then_some((self.z_b, self.w_b))
    }
}

/// `w_b = 1/(q - 2)`, `z_b = w_b exp_q(w_b)`; absent for `q >= 2`.
pub fn branch_point(q: QValue) -> BranchPoint {
    if q.is_classical() {
        let w_b = -1.0;
        return BranchPoint {
            z_b: w_b * (-1.0f64).exp(),
            w_b,
            exists: true,
        };
    }
    if q.q() >= 2.0 {
        return BranchPoint::NONE;
    }
    let w_b = 1.0 / (q.q() - 2.0);
    match exp_q_real(q, w_b) {
        Ok(e) if (w_b * e).is_finite() => BranchPoint {
            z_b: w_b * e,
            w_b,
            exists: true,
        },
        _ => BranchPoint::NONE,
    }
}

/// Iteration settings. The free functions use [`WqSolver::default`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WqSolver {
    pub residual_tol: f64,
    pub max_iter: usize,
}

impl Default for WqSolver {
    fn default() -> Self {
        Self {
            residual_tol: RESIDUAL_TOL,
            max_iter: MAX_ITER,
        }
    }
}

impl WqSolver {
    pub fn with_tol(residual_tol: f64) -> Self {
        Self {
            residual_tol,
            ..Self::default()
        }
    }

    /// Accepts a residual within tolerance, or one at the rounding floor of
    /// the best representable `w` (`4 eps (|z| + |w f'(w)|)`), which is what
    /// limits us next to a pole of `exp_q`.
    pub(crate) fn accepts(&self, residual: f64, z_abs: f64, w_abs: f64, fprime_abs: f64) -> bool {
        let floor = 4.0 * f64::EPSILON * (z_abs + w_abs * fprime_abs);
        residual.is_finite() && residual <= (self.residual_tol * z_abs.max(1.0)).max(floor)
    }

    pub fn eval_real(&self, q: QValue, z: f64, branch: BranchLabel) -> Result<WqResult, WqError> {
        real::eval(self, q, z, branch)
    }

    pub fn eval_complex(&self, q: QValue, z: Complex64) -> Result<Vec<WqResult>, WqError> {
        complex::eval(self, q, z)
    }
}

/// Real branch evaluation by bracketed Halley iteration.
pub fn wq_eval_real(q: QValue, z: f64, branch: BranchLabel) -> Result<WqResult, WqError> {
    WqSolver::default().eval_real(q, z, branch)
}

/// Every solution found from the seed grid, ascending in `|w|`.
pub fn wq_eval_complex(q: QValue, z: Complex64) -> Result<Vec<WqResult>, WqError> {
    WqSolver::default().eval_complex(q, z)
}

/// `|w exp_q(w) - z|` on the principal sheet.
pub fn defining_residual(q: QValue, w: Complex64, z: Complex64) -> Result<f64, QError> {
    Ok((w * exp_q(q, w)? - z).norm())
}
