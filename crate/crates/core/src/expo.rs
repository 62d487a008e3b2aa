//! Fermat-type `A^x + B^x = C^x` and Fibonacci-type `φ^x - φ̄^x = y √5`
//! equations, both solved through the trinomial reduction with `u = e^x`.

use crate::trinomial::{
    formula_candidates, is_real, solve_trinomial, Formula, RootRecord, RootSet, Trinomial,
    TrinomialError,
};
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

pub const FERMAT_TOL: f64 = 1e-10;
pub const FIBONACCI_RTOL: f64 = 1e-9;
pub const MAX_FIBONACCI_INDEX: u32 = 92;

/// Golden ratio `(1 + √5)/2`.
pub const PHI: f64 = 1.618_033_988_749_895;
/// `(√5 - 1)/2 = 1/φ`.
pub const PHIBAR: f64 = 0.618_033_988_749_894_9;
pub const SQRT5: f64 = 2.236_067_977_499_79;

/// Attached to the `y = 0` Fibonacci answer.
pub const ZERO_Y_NOTE: &str = "y = 0: x = 0 by direct substitution; the W_q formula alone \
finds no finite solution here, since W_q(0) = 0 maps to u = e^x = 0";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExpoError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("no candidate passed verification")]
    NoRootFound,
    #[error("Fibonacci index {0} exceeds {MAX_FIBONACCI_INDEX}")]
    Range(u32),
    #[error(transparent)]
    Trinomial(#[from] TrinomialError),
}

/// `A^x + B^x = C^x` with positive `A`, `B`, `C`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FermatProblem {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl FermatProblem {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, ExpoError> {
        if ![a, b, c].iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(ExpoError::Invalid(format!(
                "A, B, C must be positive and finite, got {a}, {b}, {c}"
            )));
        }
        Ok(Self { a, b, c })
    }

    /// `|(A/C)^x + (B/C)^x - 1|` with principal powers.
    pub fn residual(&self, x: Complex64) -> f64 {
        let ra = (x * (self.a / self.c).ln()).exp();
        let rb = (x * (self.b / self.c).ln()).exp();
        (ra + rb - 1.0).norm()
    }
}

fn finish(mut records: Vec<RootRecord>) -> RootSet {
    for r in records.iter_mut() {
        r.is_real = is_real(r.x);
    }
    crate::trinomial::RootSet::from_candidates(records)
}

/// Solves `(A/C)^x + (B/C)^x = 1` via `y^ln(A/C) + y^ln(B/C) - 1 = 0`,
/// `x = ln y`. `A = B` is solved directly as `x = ln 2 / ln(C/A)`.
pub fn solve_fermat(p: &FermatProblem) -> Result<RootSet, ExpoError> {
    let p = FermatProblem::new(p.a, p.b, p.c)?;
    if p.a == p.c || p.b == p.c {
        return Err(ExpoError::NoSolution(
            "A = C or B = C forces the remaining term to vanish".into(),
        ));
    }
    if p.a == p.b {
        let x = Complex64::new(std::f64::consts::LN_2 / (p.c / p.a).ln(), 0.0);
        let residual = p.residual(x);
        if residual > FERMAT_TOL {
            return Err(ExpoError::NoRootFound);
        }
        return Ok(finish(vec![RootRecord {
            x,
            residual,
            formula: Formula::Special,
            wq_branch: None,
            is_real: true,
        }]));
    }
    let t = Trinomial::new(1.0, (p.a / p.c).ln(), 1.0, (p.b / p.c).ln(), -1.0)?;
    let ys = solve_trinomial(&t)?;
    let records: Vec<RootRecord> = ys
        .roots
        .into_iter()
        .filter_map(|r| {
            let x = r.x.ln();
            let residual = p.residual(x);
            (x.is_finite() && residual <= FERMAT_TOL).then_some(RootRecord { x, residual, ..r })
        })
        .collect();
    if records.is_empty() {
        return Err(ExpoError::NoRootFound);
    }
    Ok(finish(records))
}

/// `φ^x - φ̄^x = y √5`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FibonacciQuery {
    pub y: f64,
}

impl FibonacciQuery {
    pub const PHI: f64 = PHI;
    pub const PHIBAR: f64 = PHIBAR;

    pub fn rhs(&self) -> f64 {
        self.y * SQRT5
    }

    /// `|φ^x - φ̄^x - y√5|` with principal powers.
    pub fn residual(&self, x: Complex64) -> f64 {
        ((x * PHI.ln()).exp() - (x * PHIBAR.ln()).exp() - self.rhs()).norm()
    }

    pub fn tolerance(&self) -> f64 {
        FIBONACCI_RTOL * self.rhs().abs().max(1.0)
    }
}

/// Solves `φ^x - φ̄^x = y√5` as `u^ln φ - u^ln φ̄ - y√5 = 0`, `x = ln u`,
/// using formula X1 for `y > 0` and X2 for `y < 0`. `y = 0` returns `x = 0`
/// with a note.
pub fn solve_fibonacci(y: f64) -> Result<RootSet, ExpoError> {
    if !y.is_finite() {
        return Err(ExpoError::Invalid(format!("y must be finite, got {y}")));
    }
    let query = FibonacciQuery { y };
    if y == 0.0 {
        let x = Complex64::new(0.0, 0.0);
        let mut set = finish(vec![RootRecord {
            x,
            residual: query.residual(x),
            formula: Formula::Special,
            wq_branch: None,
            is_real: true,
        }]);
        set.notes.push(ZERO_Y_NOTE.to_string());
        return Ok(set);
    }
    let t = Trinomial::new(1.0, PHI.ln(), -1.0, PHIBAR.ln(), -query.rhs())?;
    let formula = if y > 0.0 { Formula::X1 } else { Formula::X2 };
    let records: Vec<RootRecord> = formula_candidates(&t, formula)
        .into_iter()
        .filter_map(|r| {
            let x = r.x.ln();
            let residual = query.residual(x);
            (x.is_finite() && residual <= query.tolerance()).then_some(RootRecord {
                x,
                residual,
                ..r
            })
        })
        .collect();
    if records.is_empty() {
        return Err(ExpoError::NoRootFound);
    }
    Ok(finish(records))
}

/// `F_n`, the integer nearest to `(φ^n - ((1-√5)/2)^n)/√5`, computed exactly
/// by fast doubling (Binet in doubles stops being exact near n = 70).
pub fn fibonacci_number(n: u32) -> Result<u64, ExpoError> {
    if n > MAX_FIBONACCI_INDEX {
        return Err(ExpoError::Range(n));
    }
    fn doubling(n: u32) -> (u64, u64) {
        if n == 0 {
            return (0, 1);
        }
        let (a, b) = doubling(n / 2);
        // wrapping: F(k+1) for the top index may exceed u64 without being used
        let c = a.wrapping_mul(b.wrapping_mul(2).wrapping_sub(a));
        let d = a.wrapping_mul(a).wrapping_add(b.wrapping_mul(b));
        if n.is_multiple_of(2) {
            (c, d)
        } else {
            (d, c.wrapping_add(d))
        }
    }
    Ok(doubling(n).0)
}

/// One row of an `x` versus `y` sweep; `x` is the real root.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub y: i64,
    pub x: Result<f64, String>,
}

/// Real root of the Fibonacci equation for every integer `y` in
/// `[y_min, y_max]`, ascending. Failures are recorded per row.
pub fn fibonacci_sweep(y_min: i64, y_max: i64) -> Result<Vec<SweepRow>, ExpoError> {
    if y_min > y_max {
        return Err(ExpoError::Invalid(format!("y_min {y_min} > y_max {y_max}")));
    }
    Ok((y_min..=y_max)
        .into_par_iter()
        .map(|y| {
            let x = solve_fibonacci(y as f64)
                .map_err(|e| e.to_string())
                .and_then(|set| {
                    set.real_roots()
                        .next()
                        .ok_or_else(|| "no real root".to_string())
                });
            SweepRow { y, x }
        })
        .collect())
}
