//! Grid scan plus bisection.
//!
//! Roots closer together than `(hi - lo) / grid_n` can share a grid cell and
//! cancel each other's sign change; tangential (even-multiplicity) roots are
//! never detected. [`scan_real_roots_adaptive`] refines the grid until the
//! count settles, which catches most close pairs but proves nothing.

pub const DEFAULT_GRID_N: usize = 10_000;

const BISECT_RTOL: f64 = 1e-13;
const MAX_DOUBLINGS: usize = 8;

/// A sign-change interval `[lo, hi]` with `f_lo * f_hi <= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Option<Self> {
        (lo < hi && f_lo * f_hi <= 0.0).then_some(Self { lo, hi, f_lo, f_hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Bisects until the width is below `1e-13 * |x|` (so also below
    /// `1e-13 * max(1, |x|)`), or the bracket stops shrinking. The relative
    /// stop keeps roots far below 1 accurate to all their digits.
    pub fn bisect<F: Fn(f64) -> f64>(mut self, f: F) -> f64 {
        if self.f_lo == 0.0 {
            return self.lo;
        }
        if self.f_hi == 0.0 {
            return self.hi;
        }
        loop {
            let mid = 0.5 * (self.lo + self.hi);
            if self.width() <= BISECT_RTOL * mid.abs() || mid <= self.lo || mid >= self.hi {
                return mid;
            }
            let fm = f(mid);
            if fm == 0.0 {
                return mid;
            }
            if !fm.is_finite() {
                // pole inside the bracket, nothing to refine
                return mid;
            }
            if (fm < 0.0) == (self.f_lo < 0.0) {
                self.lo = mid;
                self.f_lo = fm;
            } else {
                self.hi = mid;
                self.f_hi = fm;
            }
        }
    }
}

/// Evaluates `f` on `grid_n + 1` equally spaced points of `[lo, hi]` and
/// bisects every sign change. Returns ascending roots; empty is legal.
pub fn scan_real_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, grid_n: usize) -> Vec<f64> {
    if lo.is_nan() || hi.is_nan() || lo >= hi || grid_n < 2 {
        return Vec::new();
    }
    let h = (hi - lo) / grid_n as f64;
    let mut roots = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    if f_prev == 0.0 {
        roots.push(lo);
    }
    for i in 1..=grid_n {
        let x = if i == grid_n { hi } else { lo + h * i as f64 };
        let fx = f(x);
        if fx == 0.0 {
            roots.push(x);
        } else if f_prev.is_finite()
            && fx.is_finite()
            && f_prev != 0.0
            && (f_prev < 0.0) != (fx < 0.0)
        {
            if let Some(b) = Bracket::new(x_prev, x, f_prev, fx) {
                let r = b.bisect(&f);
                // A sign change across a pole is not a root.
                if f(r).abs() <= f_prev.abs().max(fx.abs()) {
                    roots.push(r);
                }
            }
        }
        x_prev = x;
        f_prev = fx;
    }
    roots
}

/// Scans with `DEFAULT_GRID_N` points, doubling the grid until the root
/// count has been unchanged for two consecutive refinements.
pub fn scan_real_roots_adaptive<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Vec<f64> {
    let mut n = DEFAULT_GRID_N;
    let mut roots = scan_real_roots(&f, lo, hi, n);
    let mut stable = 0;
    for _ in 0..MAX_DOUBLINGS {
        n *= 2;
        let next = scan_real_roots(&f, lo, hi, n);
        if next.len() == roots.len() {
            stable += 1;
        } else {
            stable = 0;
        }
        roots = next;
        if stable >= 2 {
            break;
        }
    }
    roots
}
