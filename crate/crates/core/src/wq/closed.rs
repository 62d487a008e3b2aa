//! Algebraic `W_q` for q in {1/2, 4/3, 3/2, 2}.
//!
//! Each case is a polynomial of degree at most three in `w`:
//!
//! | q   | equation               | polynomial                               |
//! |-----|------------------------|------------------------------------------|
//! | 2   | `w / (1 - w) = z`      | `w = z / (1 + z)`                        |
//! | 3/2 | `z (1 - w/2)^2 = w`    | quadratic, solved directly               |
//! | 1/2 | `w (1 + w/2)^2 = z`    | `w^3 + 4w^2 + 4w - 4z = 0`               |
//! | 4/3 | `z (1 - w/3)^3 = w`    | `w^3 - 9w^2 + (27 + 27/z) w - 27 = 0`    |
//!
//! The 4/3 cubic is `(w - 3)^3 + 27w/z`, a near triple root for large `z`,
//! so it is solved in `u = 3 - w` instead: `u^3 + (27/z) u - 81/z = 0`.
//!
//! Only roots inside the real domain of `exp_q` (`1 + (1 - q) w >= 0`) are
//! branch values; the principal one is the largest and the secondary one,
//! when two exist, the smallest.

use super::{BranchLabel, WqError, WqResult, WqSolver};
use crate::qdeform::{exp_q_real, QValue};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Special {
    Half,
    FourThirds,
    ThreeHalves,
    Two,
}

impl Special {
    fn identify(q: f64) -> Option<Self> {
        const EPS: f64 = 1e-12;
        [
            (0.5, Special::Half),
            (4.0 / 3.0, Special::FourThirds),
            (1.5, Special::ThreeHalves),
            (2.0, Special::Two),
        ]
        .into_iter()
        .find(|(v, _)| (q - v).abs() <= EPS)
        .map(|(_, s)| s)
    }

    /// Exact `(z_b, w_b)`.
    fn branch_point(self) -> Option<(f64, f64)> {
        match self {
            Special::Half => Some((-8.0 / 27.0, -2.0 / 3.0)),
            Special::FourThirds => Some((-4.0 / 9.0, -1.5)),
            Special::ThreeHalves => Some((-0.5, -2.0)),
            Special::Two => None,
        }
    }

    fn exact_q(self) -> f64 {
        match self {
            Special::Half => 0.5,
            Special::FourThirds => 4.0 / 3.0,
            Special::ThreeHalves => 1.5,
            Special::Two => 2.0,
        }
    }
}

/// Real roots of `x^3 + a x^2 + b x + c`, ascending. A root pair that has
/// merged to within rounding is reported twice.
pub(crate) fn monic_cubic_real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let q = (a * a - 3.0 * b) / 9.0;
    let r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    let shift = a / 3.0;
    let q3 = q * q * q;
    let mut roots = if r * r < q3 {
        let theta = (r / q3.sqrt()).clamp(-1.0, 1.0).acos();
        let m = -2.0 * q.sqrt();
        let tau = std::f64::consts::TAU;
        vec![
            m * (theta / 3.0).cos() - shift,
            m * ((theta + tau) / 3.0).cos() - shift,
            m * ((theta - tau) / 3.0).cos() - shift,
        ]
    } else {
        let big = -r.signum() * (r.abs() + (r * r - q3).sqrt()).cbrt();
        let small = if big == 0.0 { 0.0 } else { q / big };
        let real = big + small - shift;
        let pair_re = -0.5 * (big + small) - shift;
        let pair_im = 0.5 * 3f64.sqrt() * (big - small);
        if pair_im.abs() <= 1e-7 * pair_re.abs().max(1.0) {
            vec![real, pair_re, pair_re]
        } else {
            vec![real]
        }
    };
    for x in roots.iter_mut() {
        *x = polish(*x, a, b, c);
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Up to three Newton steps on the cubic, kept only while they shrink it.
fn polish(mut x: f64, a: f64, b: f64, c: f64) -> f64 {
    let p = |x: f64| ((x + a) * x + b) * x + c;
    let dp = |x: f64| (3.0 * x + 2.0 * a) * x + b;
    for _ in 0..3 {
        let px = p(x);
        let d = dp(x);
        if px == 0.0 || d == 0.0 {
            break;
        }
        let next = x - px / d;
        if !next.is_finite() || p(next).abs() >= px.abs() {
            break;
        }
        x = next;
    }
    x
}

/// Closed-form `W_q(z)` on a real branch for the four special `q`.
pub fn wq_closed_form(q: QValue, z: f64, branch: BranchLabel) -> Result<WqResult, WqError> {
    let special = Special::identify(q.q()).ok_or(WqError::UnsupportedQ(q.q()))?;
    if !z.is_finite() {
        return Err(WqError::NonFinite);
    }
    let domain = || WqError::Domain {
        q: q.q(),
        z,
        branch,
    };
    let bp = special.branch_point();

    let w = match branch {
        BranchLabel::ComplexSeed(_) => return Err(domain()),
        BranchLabel::Principal => match bp {
            Some((z_b, w_b)) => {
                if z < z_b - 1e-15 * z_b.abs() {
                    return Err(domain());
                }
                if z <= z_b {
                    w_b
                } else {
                    principal(special, z)
                }
            }
            None => {
                if z <= -1.0 {
                    return Err(domain());
                }
                z / (1.0 + z)
            }
        },
        BranchLabel::Secondary => {
            let (z_b, w_b) = bp.ok_or(WqError::BranchUnavailable(q.q()))?;
            let closed_at_zero = special == Special::Half;
            if z < z_b - 1e-15 * z_b.abs() || z > 0.0 || (z == 0.0 && !closed_at_zero) {
                return Err(domain());
            }
            if z <= z_b {
                w_b
            } else {
                secondary(special, z).ok_or_else(domain)?
            }
        }
    };

    let qe = QValue::new(special.exact_q())?;
    let e = exp_q_real(qe, w)?;
    let residual = (w * e - z).abs();
    let fp = e / (1.0 + qe.one_minus_q() * w) * (1.0 + (2.0 - qe.q()) * w);
    if !WqSolver::default().accepts(residual, z.abs(), w.abs(), fp.abs()) {
        return Err(WqError::NoConvergence {
            q: q.q(),
            z,
            residual,
        });
    }
    Ok(WqResult {
        w: Complex64::new(w, 0.0),
        branch,
        iterations: 0,
        residual,
    })
}

fn in_domain(special: Special, w: f64) -> bool {
    match special {
        Special::Half => w >= -2.0,
        Special::FourThirds => w < 3.0,
        Special::ThreeHalves => w < 2.0,
        Special::Two => w < 1.0,
    }
}

fn cubic_roots(special: Special, z: f64) -> Vec<f64> {
    let roots = match special {
        Special::Half => monic_cubic_real_roots(4.0, 4.0, -4.0 * z),
        Special::FourThirds => {
            let mut w: Vec<f64> = monic_cubic_real_roots(0.0, 27.0 / z, -81.0 / z)
                .into_iter()
                .map(|u| 3.0 - u)
                .collect();
            w.reverse();
            w
        }
        _ => unreachable!("only the cubic cases reach here"),
    };
    roots
        .into_iter()
        .filter(|&w| in_domain(special, w))
        .collect()
}

fn principal(special: Special, z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    match special {
        Special::Two => z / (1.0 + z),
        // rationalised [2(z+1) - 2 sqrt(2z+1)] / z
        Special::ThreeHalves => 2.0 * z / (z + 1.0 + (2.0 * z + 1.0).max(0.0).sqrt()),
        Special::Half | Special::FourThirds => *cubic_roots(special, z)
            .last()
            .expect("principal root exists on the domain"),
    }
}

fn secondary(special: Special, z: f64) -> Option<f64> {
    match special {
        Special::Two => None,
        Special::ThreeHalves => Some((2.0 * (z + 1.0) + 2.0 * (2.0 * z + 1.0).max(0.0).sqrt()) / z),
        Special::Half if z == 0.0 => Some(-2.0),
        Special::Half | Special::FourThirds => {
            let roots = cubic_roots(special, z);
            (roots.len() >= 2).then(|| roots[0])
        }
    }
}
