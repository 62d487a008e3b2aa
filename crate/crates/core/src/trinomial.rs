//! Analytic roots of `a x^α + b x^β + c = 0`.
//!
//! Dividing by `a x^α` and raising to the power `(β - α)/α` turns the
//! equation into `w exp_q(w) = z` with
//!
//! ```text
//! q = 1 - α/(β - α)
//! z = (b/a) ((β - α)/α) (-c/a)^((β - α)/α)
//! x = [ (a/b) (α/(β - α)) W_q(z) ]^(1/(β - α))
//! ```
//!
//! (formula X1), and symmetrically with `(a, α)` and `(b, β)` exchanged
//! (formula X2). All powers are principal, so both formulas are evaluated
//! over every `W_q` solution we can find and each candidate is checked
//! against the original equation before it is returned.

use crate::qdeform::{cpow_principal, QValue};
use crate::wq::{BranchLabel, WqSolver};
use num_complex::Complex64;
use thiserror::Error;

/// Acceptance threshold on the magnitude-scaled residual.
pub const ROOT_TOL: f64 = 1e-8;
/// `|Im x| <= IMAG_TOL * max(1, |Re x|)` counts as real.
pub const IMAG_TOL: f64 = 1e-9;
pub const DEDUPE_RTOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrinomialError {
    #[error("invalid trinomial: {0}")]
    Invalid(String),
    #[error("the reduced equation has no solution")]
    NoSolution,
    #[error("the reduced equation holds for every x")]
    Indeterminate,
    #[error("x = 0 with a negative exponent")]
    Domain,
}

/// `a x^α + b x^β + c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trinomial {
    pub a: f64,
    pub alpha: f64,
    pub b: f64,
    pub beta: f64,
    pub c: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    X1,
    X2,
    /// Direct solution of a degenerate case.
    Special,
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Formula::X1 => "x1",
            Formula::X2 => "x2",
            Formula::Special => "special",
        })
    }
}

/// A verified root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootRecord {
    pub x: Complex64,
    pub residual: f64,
    pub formula: Formula,
    /// `None` for roots that did not come through `W_q`.
    pub wq_branch: Option<BranchLabel>,
    pub is_real: bool,
}

/// Verified solutions, real roots first, then by `|Im x|` and `Re x`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RootSet {
    pub roots: Vec<RootRecord>,
    /// Free-form remarks surfaced to the user (e.g. conventions adopted).
    pub notes: Vec<String>,
}

impl RootSet {
    pub fn real_roots(&self) -> impl Iterator<Item = f64> + '_ {
        self.roots.iter().filter(|r| r.is_real).map(|r| r.x.re)
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    /// Dedupes (keeping the smaller residual) and orders the roots.
    pub(crate) fn from_candidates(candidates: Vec<RootRecord>) -> Self {
        let mut kept: Vec<RootRecord> = Vec::new();
        for c in candidates {
            match kept
                .iter_mut()
                .find(|k| (k.x - c.x).norm() <= DEDUPE_RTOL * k.x.norm().max(1.0))
            {
                Some(k) if c.residual < k.residual => *k = c,
                Some(_) => {}
                None => kept.push(c),
            }
        }
        kept.sort_by(|p, q| {
            let ip = if p.is_real { 0.0 } else { p.x.im.abs() };
            let iq = if q.is_real { 0.0 } else { q.x.im.abs() };
            ip.total_cmp(&iq)
                .then(p.x.re.total_cmp(&q.x.re))
                .then(p.x.im.total_cmp(&q.x.im))
        });
        RootSet {
            roots: kept,
            notes: Vec::new(),
        }
    }
}

pub fn is_real(x: Complex64) -> bool {
    x.im.abs() <= IMAG_TOL * x.re.abs().max(1.0)
}

impl Trinomial {
    pub fn new(a: f64, alpha: f64, b: f64, beta: f64, c: f64) -> Result<Self, TrinomialError> {
        let t = Self {
            a,
            alpha,
            b,
            beta,
            c,
        };
        if ![a, alpha, b, beta, c].iter().all(|v| v.is_finite()) {
            return Err(TrinomialError::Invalid(
                "all parameters must be finite".into(),
            ));
        }
        if a == 0.0 && b == 0.0 {
            return Err(TrinomialError::Invalid("a and b are both zero".into()));
        }
        Ok(t)
    }

    /// The same equation with the two power terms exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            alpha: self.beta,
            b: self.a,
            beta: self.alpha,
            c: self.c,
        }
    }

    /// Cases the `W_q` formulas cannot express.
    pub fn is_degenerate(&self) -> bool {
        self.alpha == self.beta
            || self.a == 0.0
            || self.b == 0.0
            || self.c == 0.0
            || self.alpha == 0.0
            || self.beta == 0.0
    }

    /// `a x^α + b x^β + c` with principal powers.
    pub fn eval(&self, x: Complex64) -> Result<Complex64, TrinomialError> {
        Ok(term(self.a, x, self.alpha)? + term(self.b, x, self.beta)? + self.c)
    }

    /// `max(|a| max(1,|x|)^α + |b| max(1,|x|)^β + |c|, |a x^α| + |b x^β| + |c|)`.
    ///
    /// The second form only dominates for negative exponents with `|x| < 1`,
    /// where the first underestimates the size of the terms.
    pub fn residual_scale(&self, x: Complex64) -> f64 {
        let m = x.norm().max(1.0);
        let nominal =
            self.a.abs() * m.powf(self.alpha) + self.b.abs() * m.powf(self.beta) + self.c.abs();
        let terms = term(self.a, x, self.alpha).map_or(f64::INFINITY, |t| t.norm())
            + term(self.b, x, self.beta).map_or(f64::INFINITY, |t| t.norm())
            + self.c.abs();
        nominal.max(terms)
    }

    fn record(
        &self,
        x: Complex64,
        formula: Formula,
        wq_branch: Option<BranchLabel>,
    ) -> Option<RootRecord> {
        if !x.is_finite() {
            return None;
        }
        let residual = residual(self, x).ok()?;
        (residual <= ROOT_TOL * self.residual_scale(x)).then_some(RootRecord {
            x,
            residual,
            formula,
            wq_branch,
            is_real: is_real(x),
        })
    }
}

fn term(k: f64, x: Complex64, e: f64) -> Result<Complex64, TrinomialError> {
    if k == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if x.norm() == 0.0 && e < 0.0 {
        return Err(TrinomialError::Domain);
    }
    Ok(cpow_principal(x, e) * k)
}

/// `|a x^α + b x^β + c|` with principal powers.
pub fn residual(t: &Trinomial, x: Complex64) -> Result<f64, TrinomialError> {
    t.eval(x).map(|v| v.norm())
}

/// Verified candidates from one formula, over every `W_q` solution found.
/// Both formulas share this code with the roles of the power terms swapped.
pub fn formula_candidates(t: &Trinomial, formula: Formula) -> Vec<RootRecord> {
    formula_candidates_with(&WqSolver::default(), t, formula)
}

pub fn formula_candidates_with(
    solver: &WqSolver,
    t: &Trinomial,
    formula: Formula,
) -> Vec<RootRecord> {
    let (lead, other) = match formula {
        Formula::X1 => ((t.a, t.alpha), (t.b, t.beta)),
        Formula::X2 => ((t.b, t.beta), (t.a, t.alpha)),
        Formula::Special => return Vec::new(),
    };
    let ((p, mu), (r, nu)) = (lead, other);
    if p == 0.0 || r == 0.0 || mu == 0.0 || mu == nu {
        return Vec::new();
    }
    let d = nu - mu;
    let Ok(q) = QValue::new(1.0 - mu / d) else {
        return Vec::new();
    };
    let z = cpow_principal(Complex64::new(-t.c / p, 0.0), d / mu) * ((r / p) * (d / mu));
    let k = (p / r) * (mu / d);
    if !z.is_finite() || !k.is_finite() {
        return Vec::new();
    }

    let mut ws: Vec<(Complex64, BranchLabel)> = Vec::new();
    if z.im == 0.0 {
        for branch in [BranchLabel::Principal, BranchLabel::Secondary] {
            if let Ok(res) = solver.eval_real(q, z.re, branch) {
                ws.push((res.w, branch));
            }
        }
    }
    if let Ok(all) = solver.eval_complex(q, z) {
        ws.extend(all.into_iter().map(|res| (res.w, res.branch)));
    }

    let candidates = ws
        .into_iter()
        .filter_map(|(w, branch)| t.record(cpow_principal(w * k, 1.0 / d), formula, Some(branch)))
        .collect();
    RootSet::from_candidates(candidates).roots
}

/// Solves the trinomial, routing degenerate cases to [`solve_degenerate`].
/// An empty set means no candidate passed verification.
pub fn solve_trinomial(t: &Trinomial) -> Result<RootSet, TrinomialError> {
    solve_trinomial_with(&WqSolver::default(), t)
}

pub fn solve_trinomial_with(solver: &WqSolver, t: &Trinomial) -> Result<RootSet, TrinomialError> {
    let t = Trinomial::new(t.a, t.alpha, t.b, t.beta, t.c)?;
    if t.is_degenerate() {
        return solve_degenerate(&t);
    }
    let (mut x1, x2) = rayon::join(
        || formula_candidates_with(solver, &t, Formula::X1),
        || formula_candidates_with(solver, &t, Formula::X2),
    );
    x1.extend(x2);
    Ok(RootSet::from_candidates(x1))
}

/// Direct solution of the cases the `W_q` formulas cannot express:
/// equal exponents, a missing power term, a zero exponent, or `c = 0`.
pub fn solve_degenerate(t: &Trinomial) -> Result<RootSet, TrinomialError> {
    let t = Trinomial::new(t.a, t.alpha, t.b, t.beta, t.c)?;
    let mut xs: Vec<Complex64> = Vec::new();
    if t.alpha == t.beta {
        single_power(t.a + t.b, t.alpha, t.c, &mut xs)?;
    } else if t.a == 0.0 {
        single_power(t.b, t.beta, t.c, &mut xs)?;
    } else if t.b == 0.0 {
        single_power(t.a, t.alpha, t.c, &mut xs)?;
    } else if t.alpha == 0.0 {
        single_power(t.b, t.beta, t.c + t.a, &mut xs)?;
    } else if t.beta == 0.0 {
        single_power(t.a, t.alpha, t.c + t.b, &mut xs)?;
    } else if t.c == 0.0 {
        if t.alpha.min(t.beta) > 0.0 {
            xs.push(Complex64::new(0.0, 0.0));
        }
        xs.push(cpow_principal(
            Complex64::new(-t.b / t.a, 0.0),
            1.0 / (t.alpha - t.beta),
        ));
    } else {
        return Err(TrinomialError::Invalid("not a degenerate trinomial".into()));
    }
    let candidates = xs
        .into_iter()
        .filter_map(|x| t.record(x, Formula::Special, None))
        .collect();
    Ok(RootSet::from_candidates(candidates))
}

/// `k x^e + c = 0`.
fn single_power(k: f64, e: f64, c: f64, out: &mut Vec<Complex64>) -> Result<(), TrinomialError> {
    if k == 0.0 || e == 0.0 {
        let constant = if e == 0.0 { k + c } else { c };
        return if constant == 0.0 {
            Err(TrinomialError::Indeterminate)
        } else {
            Err(TrinomialError::NoSolution)
        };
    }
    if c == 0.0 {
        if e > 0.0 {
            out.push(Complex64::new(0.0, 0.0));
            return Ok(());
        }
        return Err(TrinomialError::NoSolution);
    }
    out.push(cpow_principal(Complex64::new(-c / k, 0.0), 1.0 / e));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: f64, alpha: f64, b: f64, beta: f64, c: f64) -> Trinomial {
        Trinomial::new(a, alpha, b, beta, c).unwrap()
    }

    fn has_real(set: &RootSet, x: f64, tol: f64) -> bool {
        set.real_roots().any(|r| (r - x).abs() <= tol)
    }

    #[test]
    fn residual_examples() {
        let t = tri(1.0, 2.0, 1.0, 1.0, -6.0);
        assert!(residual(&t, Complex64::new(2.0, 0.0)).unwrap() < 1e-15);
        assert_eq!(residual(&t, Complex64::new(1.0, 0.0)).unwrap(), 4.0);
        let pi_e = tri(1.0, std::f64::consts::PI, 1.0, std::f64::consts::E, -1.0);
        assert!(residual(&pi_e, Complex64::new(0.7890, 0.0)).unwrap() <= 5e-4);
        let neg = tri(1.0, -1.0, 1.0, 1.0, 1.0);
        assert_eq!(
            residual(&neg, Complex64::new(0.0, 0.0)),
            Err(TrinomialError::Domain)
        );
    }

    #[test]
    fn quadratic_both_roots() {
        let set = solve_trinomial(&tri(1.0, 2.0, 1.0, 1.0, -6.0)).unwrap();
        assert!(has_real(&set, 2.0, 1e-12));
        assert!(has_real(&set, -3.0, 1e-12));
    }

    #[test]
    fn degenerate_examples() {
        let set = solve_degenerate(&tri(2.0, 3.0, 1.0, 3.0, -24.0)).unwrap();
        assert_eq!(set.len(), 1);
        assert!((set.roots[0].x.re - 2.0).abs() < 1e-14);

        let set = solve_degenerate(&tri(1.0, 2.0, -1.0, 1.0, 0.0)).unwrap();
        let xs: Vec<f64> = set.real_roots().collect();
        assert_eq!(xs, vec![0.0, 1.0]);

        assert_eq!(
            solve_degenerate(&tri(1.0, 5.0, -1.0, 5.0, 7.0)),
            Err(TrinomialError::NoSolution)
        );
        assert_eq!(
            solve_degenerate(&tri(1.0, 5.0, -1.0, 5.0, 0.0)),
            Err(TrinomialError::Indeterminate)
        );
    }

    #[test]
    fn degenerate_routing() {
        // solve_trinomial forwards degenerate input
        let set = solve_trinomial(&tri(0.0, 2.0, 3.0, 2.0, -12.0)).unwrap();
        assert!(has_real(&set, 2.0, 1e-14));
        assert_eq!(set.roots[0].formula, Formula::Special);
        assert!(set.roots[0].wq_branch.is_none());
        // a zero exponent folds into the constant: 3 + x^2 - 7 = 0
        let set = solve_trinomial(&tri(3.0, 0.0, 1.0, 2.0, -7.0)).unwrap();
        assert!(has_real(&set, 2.0, 1e-14));
    }

    #[test]
    fn invalid_input() {
        assert!(Trinomial::new(0.0, 1.0, 0.0, 2.0, 1.0).is_err());
        assert!(Trinomial::new(1.0, f64::NAN, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn ordering_puts_real_roots_first() {
        // x^2 + x/2 + 1 has no real roots
        let set = solve_trinomial(&tri(1.0, 2.0, 0.5, 1.0, 1.0)).unwrap();
        for r in &set.roots {
            assert!(!r.is_real);
        }
        let set = solve_trinomial(&tri(1.0, 2.0, 1.0, 1.0, -6.0)).unwrap();
        let first_complex = set
            .roots
            .iter()
            .position(|r| !r.is_real)
            .unwrap_or(set.len());
        assert!(set.roots[..first_complex].iter().all(|r| r.is_real));
        assert!(set.roots[first_complex..].iter().all(|r| !r.is_real));
    }
}
