//! Lambert-Tsallis `W_q` evaluation and the equation solvers built on it.
//!
//! * [`qdeform`]: q-exponential, q-logarithm and the q-power rule.
//! * [`wq`]: real branches, branch points, closed forms and complex
//!   enumeration of `W_q`.
//! * [`trinomial`]: `a x^α + b x^β + c = 0` via `W_q`.
//! * [`expo`]: `A^x + B^x = C^x` and `φ^x - φ̄^x = y√5`.
//!
//! Every root a solver returns has been substituted back into the equation
//! it claims to solve.

pub mod expo;
pub mod qdeform;
pub mod trinomial;
pub mod wq;

pub use expo::{
    fibonacci_number, fibonacci_sweep, solve_fermat, solve_fibonacci, ExpoError, FermatProblem,
    FibonacciQuery, SweepRow,
};
pub use qdeform::{exp_q, exp_q_real, ln_q, qpow_transform, ComplexScalar, QError, QValue};
pub use trinomial::{
    residual, solve_degenerate, solve_trinomial, Formula, RootRecord, RootSet, Trinomial,
    TrinomialError,
};
pub use wq::{
    branch_point, wq_closed_form, wq_eval_complex, wq_eval_real, BranchLabel, BranchPoint, WqError,
    WqResult, WqSolver,
};
