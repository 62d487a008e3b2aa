//! Complex solutions of `w exp_q(w) = z` by damped Newton from a fixed
//! seed grid: radii `{1/4, 1, 4} * max(1, |z|)` times 16 equally spaced
//! angles, plus one principal-branch seed, plus asymptotic seeds for the
//! sheets `k = -3..=3`.
//!
//! The asymptotic seeds come from iterating the logarithmic form
//! `Log(1 + (1-q) w) / (1-q) = Log z - Log w + 2πik`. For `q > 1` and large
//! `|z|` the solutions crowd the pole `1/(q-1)` of `exp_q`, far inside the
//! smallest grid ring, and only these seeds reach them.

use super::{branch_point, BranchLabel, WqError, WqResult, WqSolver, DEDUPE_RTOL};
use crate::qdeform::{exp_q, QValue};
use num_complex::Complex64;

const SEED_RADII: [f64; 3] = [0.25, 1.0, 4.0];
const SEED_ANGLES: usize = 16;
const MAX_HALVINGS: usize = 40;
const ASYMPTOTIC_SHEETS: i32 = 3;
const ASYMPTOTIC_STEPS: usize = 30;

/// `f(w) = w exp_q(w) - z` and `f'(w) = exp_q(w)^q (1 + (2 - q) w)` on the
/// principal sheet.
fn sample(q: QValue, w: Complex64, z: Complex64) -> Option<(Complex64, Complex64)> {
    let e = exp_q(q, w).ok()?;
    let fp = if q.is_classical() {
        e * (w + 1.0)
    } else {
        let base = w * q.one_minus_q() + 1.0;
        e / base * (w * (2.0 - q.q()) + 1.0)
    };
    let f = w * e - z;
    (f.is_finite() && fp.is_finite()).then_some((f, fp))
}

struct Converged {
    w: Complex64,
    iterations: usize,
    residual: f64,
}

fn newton(solver: &WqSolver, q: QValue, z: Complex64, seed: Complex64) -> Option<Converged> {
    let mut w = seed;
    let (mut f, mut fp) = sample(q, w, z)?;
    let mut iterations = 0;
    while iterations < solver.max_iter {
        iterations += 1;
        if f.norm() == 0.0 || fp.norm() == 0.0 {
            break;
        }
        let step = f / fp;
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let trial = w - step * lambda;
            if let Some((ft, fpt)) = sample(q, trial, z) {
                if ft.norm() < f.norm() {
                    accepted = Some((trial, ft, fpt));
                    break;
                }
            }
            lambda *= 0.5;
        }
        let Some((next, fn_, fpn)) = accepted else {
            // no descent left: either converged to rounding or stuck
            break;
        };
        let moved = (next - w).norm();
        w = next;
        f = fn_;
        fp = fpn;
        if moved <= 1e-15 * w.norm().max(1.0) {
            break;
        }
    }
    let residual = f.norm();
    solver
        .accepts(residual, z.norm(), w.norm(), fp.norm())
        .then_some(Converged {
            w,
            iterations,
            residual,
        })
}

fn principal_seed(q: QValue, z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        let in_domain = match branch_point(q).get() {
            Some((z_b, _)) => z.re >= z_b,
            None => q.q() != 2.0 || z.re > -1.0,
        };
        if in_domain && z.re.abs() <= 1.0 && z.re > -1.0 {
            return z / (z + 1.0);
        }
        if z.re > std::f64::consts::E {
            return Complex64::new(z.re.ln() - z.re.ln().ln(), 0.0);
        }
    }
    let guess = z / (z + 1.0);
    if guess.is_finite() {
        guess
    } else {
        z
    }
}

/// Fixed-point iterate of `w = (exp((1-q)(L - Log w)) - 1) / (1-q)`, with
/// `L = Log z + 2πik` (classically `w = L - Log w`).
fn asymptotic_seed(q: QValue, z: Complex64, k: i32) -> Option<Complex64> {
    let l = z.ln() + Complex64::new(0.0, std::f64::consts::TAU * f64::from(k));
    let omq = q.one_minus_q();
    let mut w = l;
    for _ in 0..ASYMPTOTIC_STEPS {
        let next = if q.is_classical() {
            l - w.ln()
        } else {
            (((l - w.ln()) * omq).exp() - 1.0) / omq
        };
        if !next.is_finite() || next.norm() == 0.0 {
            break;
        }
        w = next;
    }
    (w.is_finite() && z.norm() > 0.0).then_some(w)
}

pub(super) fn eval(solver: &WqSolver, q: QValue, z: Complex64) -> Result<Vec<WqResult>, WqError> {
    if !z.is_finite() {
        return Err(WqError::NonFinite);
    }
    let mut found: Vec<Converged> = Vec::new();

    // exact real branch values go in first so they win deduplication
    if z.im == 0.0 {
        for branch in [BranchLabel::Principal, BranchLabel::Secondary] {
            if let Ok(r) = solver.eval_real(q, z.re, branch) {
                found.push(Converged {
                    w: r.w,
                    iterations: r.iterations,
                    residual: r.residual,
                });
            }
        }
    }

    let scale = z.norm().max(1.0);
    let seeds = std::iter::once(principal_seed(q, z)).chain(SEED_RADII.iter().flat_map(|&r| {
        (0..SEED_ANGLES).map(move |k| {
            let theta = std::f64::consts::TAU * k as f64 / SEED_ANGLES as f64;
            Complex64::from_polar(r * scale, theta)
        })
    }));
    let asymptotic =
        (-ASYMPTOTIC_SHEETS..=ASYMPTOTIC_SHEETS).filter_map(|k| asymptotic_seed(q, z, k));
    for seed in seeds.chain(asymptotic) {
        if let Some(c) = newton(solver, q, z, seed) {
            found.push(c);
        }
    }

    let mut distinct: Vec<Converged> = Vec::new();
    for c in found {
        let dup = distinct
            .iter()
            .any(|d| (d.w - c.w).norm() <= DEDUPE_RTOL * d.w.norm().max(1.0));
        if !dup {
            distinct.push(c);
        }
    }
    if distinct.is_empty() {
        return Err(WqError::EmptyResult { q: q.q(), z });
    }
    distinct.sort_by(|a, b| {
        a.w.norm()
            .total_cmp(&b.w.norm())
            .then(a.w.re.total_cmp(&b.w.re))
            .then(a.w.im.total_cmp(&b.w.im))
    });
    Ok(distinct
        .into_iter()
        .enumerate()
        .map(|(k, c)| WqResult {
            w: c.w,
            branch: BranchLabel::ComplexSeed(k),
            iterations: c.iterations,
            residual: c.residual,
        })
        .collect())
}
