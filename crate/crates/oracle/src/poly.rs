//! All complex roots of a polynomial by Aberth-Ehrlich simultaneous
//! iteration, plus the reduction of a rational-exponent trinomial
//! `a x^α + b x^β + c` to a polynomial in `u = x^(1/d)`.

use num_complex::Complex64;
use thiserror::Error;

pub const MAX_DEGREE: usize = 64;
pub const MAX_ITER: usize = 500;
pub const MAX_REDUCTION_DENOMINATOR: u32 = 12;

const RESIDUAL_RTOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("degree {0} exceeds the supported maximum of {MAX_DEGREE}")]
    DegreeTooHigh(usize),
    #[error("simultaneous iteration did not converge in {MAX_ITER} sweeps")]
    NoConvergence,
    #[error("exponents are not rationals with a common denominator <= {0}")]
    OutOfRange(u32),
}

/// Horner evaluation; `coeffs` are in ascending order of power.
pub fn poly_eval(coeffs: &[Complex64], u: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c)
}

fn eval_with_derivative(coeffs: &[Complex64], u: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let mut p = zero;
    let mut dp = zero;
    for &c in coeffs.iter().rev() {
        dp = dp * u + p;
        p = p * u + c;
    }
    (p, dp)
}

/// Sum of `|c_k| |u|^k`, the magnitude scale residuals are compared to.
fn magnitude_scale(coeffs: &[Complex64], u: Complex64) -> f64 {
    let r = u.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Returns all `n` roots of `coeffs[0] + coeffs[1] u + ... + coeffs[n] u^n`.
///
/// Initial guesses sit on a slightly perturbed circle whose radius is the
/// geometric mean of the root moduli, so the output is deterministic.
/// Repeated roots come back as clusters whose spread is roughly
/// `eps^(1/m)` for multiplicity `m`.
pub fn poly_roots_all(coeffs: &[Complex64]) -> Result<Vec<Complex64>, PolyError> {
    let n = coeffs.len().saturating_sub(1);
    if n > MAX_DEGREE {
        return Err(PolyError::DegreeTooHigh(n));
    }
    match coeffs.last() {
        None => return Ok(Vec::new()),
        Some(c) if c.norm() == 0.0 => return Err(PolyError::ZeroLeading),
        _ => {}
    }

    // exact zero roots are split off so the circle radius stays meaningful
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros..];
    let m = reduced.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if m == 0 {
        return Ok(roots);
    }
    if m == 1 {
        roots.push(-reduced[0] / reduced[1]);
        return Ok(roots);
    }

    let radius = (reduced[0].norm() / reduced[m].norm()).powf(1.0 / m as f64);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / m as f64 + 0.4;
            let r = radius * (1.0 + 0.05 * (k as f64 / m as f64));
            Complex64::from_polar(r, theta)
        })
        .collect();
    let mut done = vec![false; m];

    for _ in 0..MAX_ITER {
        for i in 0..m {
            if done[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(reduced, z[i]);
            if p.norm() <= 4.0 * f64::EPSILON * magnitude_scale(reduced, z[i]) {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..m)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                // dp vanished or two estimates collided; nudge and retry next sweep
                let nudge = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += nudge;
                continue;
            }
            z[i] -= step;
            if step.norm() <= 2.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }

    let all_small = z
        .iter()
        .all(|&u| poly_eval(reduced, u).norm() <= RESIDUAL_RTOL * magnitude_scale(reduced, u));
    if !all_small {
        return Err(PolyError::NoConvergence);
    }
    roots.extend(z);
    Ok(roots)
}

/// Finds `num / den` equal to `x` within `1e-12 * max(1, |x|)` with the
/// smallest `den <= max_den`.
pub fn as_small_rational(x: f64, max_den: u32) -> Option<(i64, u32)> {
    if !x.is_finite() {
        return None;
    }
    (1..=max_den).find_map(|den| {
        let num = (x * den as f64).round();
        ((num / den as f64 - x).abs() <= 1e-12 * x.abs().max(1.0)).then_some((num as i64, den))
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Rewrites `a x^α + b x^β + c` as a polynomial in `u = x^(1/d)`, where `d`
/// is the least common denominator of `α` and `β`. Negative powers are
/// cleared by multiplying through by the lowest power of `u`.
///
/// Returns ascending coefficients and `d`. Fails with `OutOfRange` when
/// either exponent is irrational-looking or `d > max_den`.
pub fn rational_trinomial_poly(
    a: f64,
    alpha: f64,
    b: f64,
    beta: f64,
    c: f64,
    max_den: u32,
) -> Result<(Vec<Complex64>, u32), PolyError> {
    let (pa, da) = as_small_rational(alpha, max_den).ok_or(PolyError::OutOfRange(max_den))?;
    let (pb, db) = as_small_rational(beta, max_den).ok_or(PolyError::OutOfRange(max_den))?;
    let d = da / gcd(da, db) * db;
    if d > max_den {
        return Err(PolyError::OutOfRange(max_den));
    }
    let ea = pa * (d / da) as i64;
    let eb = pb * (d / db) as i64;
    let shift = -ea.min(eb).min(0);
    let (ea, eb, ec) = ((ea + shift) as usize, (eb + shift) as usize, shift as usize);
    let degree = ea.max(eb).max(ec);
    if degree > MAX_DEGREE {
        return Err(PolyError::DegreeTooHigh(degree));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
    coeffs[ea] += a;
    coeffs[eb] += b;
    coeffs[ec] += c;
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    Ok((coeffs, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
        v
    }

    #[test]
    fn cube_roots_of_unity() {
        let roots = poly_roots_all(&[c(-1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!((r.powu(3) - 1.0).norm() < 1e-13);
            assert!((r.norm() - 1.0).abs() < 1e-13);
        }
        let mut args: Vec<f64> = roots.iter().map(|r| r.arg()).collect();
        args.sort_by(f64::total_cmp);
        let third = std::f64::consts::TAU / 3.0;
        assert!((args[0] + third).abs() < 1e-12);
        assert!(args[1].abs() < 1e-12);
        assert!((args[2] - third).abs() < 1e-12);
    }

    #[test]
    fn quadratic() {
        let roots = sorted_re(poly_roots_all(&[c(6.0), c(-5.0), c(1.0)]).unwrap());
        assert!((roots[0] - c(2.0)).norm() < 1e-13);
        assert!((roots[1] - c(3.0)).norm() < 1e-13);
    }

    #[test]
    fn zero_roots_and_linear() {
        let roots = sorted_re(poly_roots_all(&[c(0.0), c(0.0), c(-2.0), c(1.0)]).unwrap());
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0], c(0.0));
        assert_eq!(roots[1], c(0.0));
        assert!((roots[2] - c(2.0)).norm() < 1e-15);
    }

    #[test]
    fn repeated_root_cluster() {
        // (u - 1)^2 (u + 2)
        let roots = sorted_re(poly_roots_all(&[c(2.0), c(-3.0), c(0.0), c(1.0)]).unwrap());
        assert!((roots[0] - c(-2.0)).norm() < 1e-12);
        assert!((roots[1] - c(1.0)).norm() < 1e-6);
        assert!((roots[2] - c(1.0)).norm() < 1e-6);
    }

    #[test]
    fn errors() {
        assert_eq!(
            poly_roots_all(&[c(1.0), c(0.0)]),
            Err(PolyError::ZeroLeading)
        );
        assert_eq!(
            poly_roots_all(&vec![c(1.0); 70]),
            Err(PolyError::DegreeTooHigh(69))
        );
    }

    #[test]
    fn rational_detection() {
        assert_eq!(as_small_rational(2.5, 12), Some((5, 2)));
        assert_eq!(as_small_rational(-1.0 / 3.0, 12), Some((-1, 3)));
        assert_eq!(as_small_rational(2.01, 12), None);
        assert_eq!(as_small_rational(std::f64::consts::PI, 12), None);
    }

    #[test]
    fn out_of_range_reduction() {
        // x^2.01 needs d = 100
        assert_eq!(
            rational_trinomial_poly(1.0, 2.01, -5.0, 1.0, 6.0, MAX_REDUCTION_DENOMINATOR),
            Err(PolyError::OutOfRange(12))
        );
    }

    #[test]
    fn reduction_with_negative_exponent() {
        // x^(1/2) + 2 x^(-1/2) - 3 = 0  ->  u^2 - 3u + 2 with u = x^(1/2)
        let (coeffs, d) = rational_trinomial_poly(1.0, 0.5, 2.0, -0.5, -3.0, 12).unwrap();
        assert_eq!(d, 2);
        assert_eq!(coeffs, vec![c(2.0), c(-3.0), c(1.0)]);
    }
}
