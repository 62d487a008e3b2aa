//! Real branches: bracketed Halley iteration on `f(w) = w exp_q(w) - z`.

use super::{branch_point, BranchLabel, WqError, WqResult, WqSolver};
use crate::qdeform::{exp_q_real, QError, QValue};
use num_complex::Complex64;

const MAX_EXPANSIONS: usize = 1100;
/// Relative slack for treating `z` just below `z_b` as the branch point.
const BRANCH_POINT_SLACK: f64 = 1e-15;

struct Sample {
    f: f64,
    fp: f64,
    fpp: f64,
}

/// `f`, `f'` and `f''` from `exp_q' = exp_q^q = exp_q / base`.
fn sample(q: QValue, w: f64, z: f64) -> Result<Sample, QError> {
    let e = exp_q_real(q, w)?;
    if q.is_classical() {
        return Ok(Sample {
            f: w * e - z,
            fp: e * (1.0 + w),
            fpp: e * (2.0 + w),
        });
    }
    let qq = q.q();
    let base = 1.0 + q.one_minus_q() * w;
    let eq = e / base;
    let slope = 1.0 + (2.0 - qq) * w;
    Ok(Sample {
        f: w * e - z,
        fp: eq * slope,
        fpp: eq * (qq * slope / base + (2.0 - qq)),
    })
}

fn split_point(lo: f64, hi: f64) -> f64 {
    if lo > 0.0 && hi > 4.0 * lo {
        (lo * hi).sqrt()
    } else if hi < 0.0 && lo < 4.0 * hi {
        -(lo * hi).sqrt()
    } else {
        0.5 * (lo + hi)
    }
}

fn principal_guess(z: f64) -> f64 {
    if z.abs() <= 1.0 && 1.0 + z > 0.0 {
        z / (1.0 + z)
    } else if z > std::f64::consts::E {
        z.ln() - z.ln().ln()
    } else if z > 0.0 {
        z.ln_1p()
    } else {
        f64::NAN
    }
}

enum End {
    /// `g` at this end is known to have the right sign.
    Known(f64),
    /// Unbounded; must be found by expansion.
    Open,
}

pub(super) fn eval(
    solver: &WqSolver,
    q: QValue,
    z: f64,
    branch: BranchLabel,
) -> Result<WqResult, WqError> {
    if !z.is_finite() {
        return Err(WqError::NonFinite);
    }
    let domain = || WqError::Domain {
        q: q.q(),
        z,
        branch,
    };
    let bp = branch_point(q);
    let omq = q.one_minus_q();
    let classical = q.is_classical();

    let at = |w: f64, iterations: usize| -> Result<WqResult, WqError> {
        let residual = (w * exp_q_real(q, w)? - z).abs();
        Ok(WqResult {
            w: Complex64::new(w, 0.0),
            branch,
            iterations,
            residual,
        })
    };

    // geometry of the requested branch; sign makes g = sign * f increasing
    let (lo_end, hi_end, sign, seed) = match branch {
        BranchLabel::Principal => {
            let lo = match bp.get() {
                Some((z_b, w_b)) => {
                    if z < z_b - BRANCH_POINT_SLACK * z_b.abs() {
                        return Err(domain());
                    }
                    if z <= z_b {
                        return at(w_b, 0);
                    }
                    End::Known(w_b)
                }
                None if !classical && q.q() < 2.0 => {
                    return Err(WqError::Overflow { q: q.q(), z });
                }
                None => {
                    if q.q() == 2.0 && z <= -1.0 {
                        return Err(domain());
                    }
                    End::Open
                }
            };
            let hi = if classical || omq > 0.0 {
                End::Open
            } else {
                End::Known(-1.0 / omq)
            };
            (lo, hi, 1.0, principal_guess(z))
        }
        BranchLabel::Secondary => {
            let (z_b, w_b) = bp.get().ok_or(WqError::BranchUnavailable(q.q()))?;
            if z < z_b - BRANCH_POINT_SLACK * z_b.abs() {
                return Err(domain());
            }
            if z <= z_b {
                return at(w_b, 0);
            }
            let lo = if !classical && omq > 0.0 {
                let edge = -1.0 / omq;
                if z > 0.0 {
                    return Err(domain());
                }
                if z == 0.0 {
                    return at(edge, 0);
                }
                End::Known(edge)
            } else {
                if z >= 0.0 {
                    return Err(domain());
                }
                End::Open
            };
            let guess = 2.0 * w_b - principal_guess(z);
            (lo, End::Known(w_b), -1.0, guess)
        }
        BranchLabel::ComplexSeed(_) => return Err(domain()),
    };

    // g(w) with overflow read as +inf: only the principal branch can
    // overflow, and only towards its upper end
    let g = |w: f64| -> Result<f64, WqError> {
        match exp_q_real(q, w) {
            Ok(e) => Ok(sign * (w * e - z)),
            Err(QError::Overflow) => Ok(f64::INFINITY),
            Err(e) => Err(e.into()),
        }
    };

    let overflow = || WqError::Overflow { q: q.q(), z };
    let (mut lo, mut hi) = match (lo_end, hi_end) {
        (End::Known(lo), End::Known(hi)) => (lo, hi),
        (End::Known(lo), End::Open) => {
            let mut lo = lo;
            let mut w = if seed.is_finite() {
                (2.0 * seed.abs()).max(1.0)
            } else {
                1.0
            };
            w = w.max(lo.abs() + 1.0);
            let mut found = None;
            for _ in 0..MAX_EXPANSIONS {
                if !w.is_finite() {
                    break;
                }
                if g(w)? >= 0.0 {
                    found = Some(w);
                    break;
                }
                lo = lo.max(w);
                w *= 2.0;
            }
            (lo, found.ok_or_else(overflow)?)
        }
        (End::Open, End::Known(hi)) => {
            let mut hi = hi;
            let start = if seed.is_finite() && seed < 0.0 {
                2.0 * seed
            } else {
                -1.0
            };
            let mut w = start.min(-1.0).min(-2.0 * hi.abs());
            let mut found = None;
            for _ in 0..MAX_EXPANSIONS {
                if !w.is_finite() {
                    break;
                }
                if g(w)? <= 0.0 {
                    found = Some(w);
                    break;
                }
                hi = hi.min(w);
                w *= 2.0;
            }
            (found.ok_or_else(overflow)?, hi)
        }
        (End::Open, End::Open) => unreachable!("every real branch has one finite end"),
    };

    let mut w = if seed > lo && seed < hi {
        seed
    } else {
        split_point(lo, hi)
    };
    let mut iterations = 0;
    let mut at_resolution = false;
    let (mut last_step, mut step_before_last) = (hi - lo, hi - lo);
    while iterations < solver.max_iter {
        iterations += 1;
        let s = match sample(q, w, z) {
            Ok(s) => s,
            Err(QError::Overflow) => {
                hi = w;
                w = split_point(lo, hi);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        if s.f == 0.0 {
            break;
        }
        if sign * s.f < 0.0 {
            lo = w;
        } else {
            hi = w;
        }
        let denom = 2.0 * s.fp * s.fp - s.f * s.fpp;
        let mut next = w - 2.0 * s.f * s.fp / denom;
        // bisect when Halley leaves the bracket or is not at least halving
        // its step every two iterations (it creeps ~1 per step down an
        // exponential tail)
        if !next.is_finite()
            || next <= lo
            || next >= hi
            || (next - w).abs() > 0.5 * step_before_last
        {
            next = split_point(lo, hi);
        }
        step_before_last = last_step;
        last_step = (next - w).abs();
        let collapsed = hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs());
        let settled = (next - w).abs() <= 2.0 * f64::EPSILON * next.abs();
        w = next;
        if collapsed || settled {
            at_resolution = true;
            break;
        }
    }

    let s = sample(q, w, z)?;
    let residual = s.f.abs();
    if solver.accepts(residual, z.abs(), w.abs(), s.fp.abs()) {
        Ok(WqResult {
            w: Complex64::new(w, 0.0),
            branch,
            iterations,
            residual,
        })
    } else if at_resolution {
        // the iteration reached double spacing and the residual is still
        // large: the root sits closer to the pole of exp_q than doubles resolve
        Err(overflow())
    } else {
        Err(WqError::NoConvergence {
            q: q.q(),
            z,
            residual,
        })
    }
}
