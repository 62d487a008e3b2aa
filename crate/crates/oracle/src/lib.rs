//! Independent root-finding oracles.
//!
//! Two brute-force tools live here: a grid scan with bisection for real
//! roots of arbitrary real functions, and a simultaneous-iteration finder
//! for every complex root of a polynomial. Neither knows anything about
//! the Lambert-Tsallis machinery they are used to check.

mod poly;
mod scan;

pub use poly::{
    as_small_rational, poly_eval, poly_roots_all, rational_trinomial_poly, PolyError, MAX_DEGREE,
    MAX_ITER, MAX_REDUCTION_DENOMINATOR,
};
pub use scan::{scan_real_roots, scan_real_roots_adaptive, Bracket, DEFAULT_GRID_N};

pub use num_complex::Complex64;
