//! Tsallis q-deformed exponential and logarithm.
//!
//! `exp_q(z) = [1 + (1 - q) z]^(1 / (1 - q))`, which tends to `e^z` as
//! `q -> 1`. Complex powers always take the principal logarithm; choosing
//! among the other sheets is the caller's business.

use num_complex::Complex64;
use thiserror::Error;

/// Complex carrier used throughout evaluation.
pub type ComplexScalar = Complex64;

/// Below this `|1 - q|` the classical exponential is used.
pub const Q_UNITY_EPS: f64 = 1e-12;

/// Absolute slack on the real-domain test `1 + (1 - q) w >= 0`.
pub const DOMAIN_EPS: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QError {
    #[error("q must be finite, got {0}")]
    NonFiniteQ(f64),
    #[error("argument outside the real domain: {0}")]
    Domain(String),
    #[error("result overflows double precision")]
    Overflow,
    #[error("power transform with exponent r = 0")]
    ZeroPower,
}

/// The deformation parameter `q` together with `1 - q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QValue {
    q: f64,
    one_minus_q: f64,
}

impl QValue {
    pub fn new(q: f64) -> Result<Self, QError> {
        if !q.is_finite() {
            return Err(QError::NonFiniteQ(q));
        }
        Ok(Self {
            q,
            one_minus_q: 1.0 - q,
        })
    }

    pub fn q(self) -> f64 {
        self.q
    }

    pub fn one_minus_q(self) -> f64 {
        self.one_minus_q
    }

    /// True when `exp_q` is routed to the classical exponential.
    pub fn is_classical(self) -> bool {
        self.one_minus_q.abs() < Q_UNITY_EPS
    }
}

impl TryFrom<f64> for QValue {
    type Error = QError;

    fn try_from(q: f64) -> Result<Self, QError> {
        Self::new(q)
    }
}

/// Replaces a negative-zero imaginary part by `+0.0` so that the principal
/// logarithm of a negative real number has argument `+π`.
pub(crate) fn canonical_zero(z: Complex64) -> Complex64 {
    Complex64::new(z.re, z.im + 0.0)
}

/// `ln(1 + u)` on the principal sheet, accurate for small `|u|`.
pub(crate) fn clog1p(u: Complex64) -> Complex64 {
    let u = canonical_zero(u);
    let re1 = 1.0 + u.re;
    let modulus = if u.norm() < 0.5 {
        0.5 * (2.0 * u.re + u.re * u.re + u.im * u.im).ln_1p()
    } else {
        re1.hypot(u.im).ln()
    };
    Complex64::new(modulus, u.im.atan2(re1))
}

/// Principal power `base^p = exp(p Log base)`, real arithmetic for positive
/// real bases, `0^p = 0` for `p > 0`.
pub fn cpow_principal(base: Complex64, p: f64) -> Complex64 {
    let base = canonical_zero(base);
    if base.im == 0.0 && base.re > 0.0 {
        return Complex64::new(base.re.powf(p), 0.0);
    }
    if base.re == 0.0 && base.im == 0.0 {
        return if p > 0.0 {
            Complex64::new(0.0, 0.0)
        } else if p == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    (base.ln() * p).exp()
}

fn finite_or_overflow(z: Complex64) -> Result<Complex64, QError> {
    if z.is_finite() {
        Ok(z)
    } else {
        Err(QError::Overflow)
    }
}

/// Complex q-exponential on the principal sheet.
pub fn exp_q(q: QValue, z: Complex64) -> Result<Complex64, QError> {
    if q.is_classical() {
        return finite_or_overflow(z.exp());
    }
    let omq = q.one_minus_q;
    let u = canonical_zero(z * omq);
    if u.im == 0.0 {
        if u.re > -1.0 {
            return exp_q_real(q, z.re).map(|v| Complex64::new(v, 0.0));
        }
        if u.re == -1.0 {
            return if omq > 0.0 {
                Ok(Complex64::new(0.0, 0.0))
            } else {
                Err(QError::Overflow)
            };
        }
    }
    finite_or_overflow((clog1p(u) / omq).exp())
}

/// Real q-exponential; requires `1 + (1 - q) w >= -DOMAIN_EPS`.
pub fn exp_q_real(q: QValue, w: f64) -> Result<f64, QError> {
    if q.is_classical() {
        let v = w.exp();
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(QError::Overflow)
        };
    }
    let omq = q.one_minus_q;
    let t = omq * w;
    let base = 1.0 + t;
    if base < -DOMAIN_EPS || base.is_nan() {
        return Err(QError::Domain(format!(
            "1 + (1 - q) w = {base} < 0 for q = {}, w = {w}",
            q.q
        )));
    }
    if base <= 0.0 {
        return if omq > 0.0 {
            Ok(0.0)
        } else {
            Err(QError::Overflow)
        };
    }
    let v = (t.ln_1p() / omq).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QError::Overflow)
    }
}

/// Returns `q' = 1 - (1 - q) / r`, so that `exp_q(z)^r = exp_{q'}(r z)`.
pub fn qpow_transform(q: QValue, r: f64) -> Result<QValue, QError> {
    if r == 0.0 {
        return Err(QError::ZeroPower);
    }
    QValue::new(1.0 - q.one_minus_q / r)
}

/// q-logarithm, the inverse of [`exp_q_real`] on `x > 0`.
pub fn ln_q(q: QValue, x: f64) -> Result<f64, QError> {
    if x.is_nan() || x <= 0.0 {
        return Err(QError::Domain(format!("ln_q requires x > 0, got {x}")));
    }
    if q.is_classical() {
        return Ok(x.ln());
    }
    Ok((q.one_minus_q * x.ln()).exp_m1() / q.one_minus_q)
}
