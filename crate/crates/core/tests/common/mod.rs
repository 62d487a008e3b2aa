#![allow(dead_code)]

/// `w (1 + (1-q) w)^(1/(1-q))` written out directly, with the classical
/// limit at `q = 1`. Independent of the crate's own `exp_q`.
pub fn f_real(q: f64, w: f64) -> f64 {
    if (1.0 - q).abs() < 1e-12 {
        return w * w.exp();
    }
    let base = 1.0 + (1.0 - q) * w;
    if base <= 0.0 {
        return f64::NAN;
    }
    w * base.powf(1.0 / (1.0 - q))
}

/// Plain bisection of `g` on `[lo, hi]`; panics if there is no sign change.
pub fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut g_lo = g(lo);
    let g_hi = g(hi);
    assert!(
        g_lo == 0.0 || g_hi == 0.0 || g_lo.signum() != g_hi.signum(),
        "no bracket [{lo}, {hi}]"
    );
    if g_lo == 0.0 {
        return lo;
    }
    if g_hi == 0.0 {
        return hi;
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return mid;
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bisection oracle for the real trinomial root in the safe family
/// (`a, b > 0`, `c < 0`, `α > β > 0`): exactly one positive root.
pub fn safe_family_root(a: f64, alpha: f64, b: f64, beta: f64, c: f64) -> f64 {
    let g = |x: f64| a * x.powf(alpha) + b * x.powf(beta) + c;
    let mut hi = 1.0;
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    bisect(g, 0.0, hi)
}
