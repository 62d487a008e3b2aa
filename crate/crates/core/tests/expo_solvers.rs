mod common;

use common::bisect;
use lambert_tsallis::expo::{PHI, PHIBAR, SQRT5};
use lambert_tsallis::{
    fibonacci_number, fibonacci_sweep, solve_fermat, solve_fibonacci, FermatProblem,
};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn fib_x(y: f64) -> f64 {
    let xs: Vec<f64> = solve_fibonacci(y).unwrap().real_roots().collect();
    assert_eq!(xs.len(), 1, "y={y}: {xs:?}");
    xs[0]
}

#[test]
fn fermat_random_triples_unique_and_verified() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..500 {
        let c: f64 = rng.gen_range(2.0..1000.0);
        let a = rng.gen_range(1.0..c);
        let b = rng.gen_range(1.0..c);
        if (a - b).abs() < 1e-9 || c - a.max(b) < 1e-9 {
            continue;
        }
        let p = FermatProblem::new(a, b, c).unwrap();
        let set = solve_fermat(&p).unwrap();
        let xs: Vec<f64> = set.real_roots().collect();
        assert_eq!(xs.len(), 1, "{p:?}: {xs:?}");
        let g = |x: f64| (a / c).powf(x) + (b / c).powf(x) - 1.0;
        let mut hi = 1.0;
        while g(hi) > 0.0 {
            hi *= 2.0;
        }
        let oracle = bisect(g, -1.0, hi);
        assert!(
            (xs[0] - oracle).abs() <= 1e-9 * oracle.abs().max(1.0),
            "{p:?}: {} vs {oracle}",
            xs[0]
        );
        for r in &set.roots {
            assert!(r.residual <= 1e-10 && p.residual(r.x) <= 1e-10, "{p:?}");
        }
    }
}

#[test]
fn fibonacci_even_index_identity() {
    for n in (2..=40).step_by(2) {
        let f = fibonacci_number(n).unwrap() as f64;
        let x = fib_x(f);
        assert!((x - n as f64).abs() <= 1e-9, "n={n}: {x}");
    }
}

#[test]
fn fibonacci_odd_symmetry_and_round_trip() {
    for y in 1..=500 {
        let y = y as f64;
        let (xp, xn) = (fib_x(y), fib_x(-y));
        assert!((xp + xn).abs() <= 1e-9, "y={y}: {xp} {xn}");
        for (yy, x) in [(y, xp), (-y, xn)] {
            let back = (PHI.powf(x) - PHIBAR.powf(x)) / SQRT5;
            assert!(
                (back - yy).abs() <= 1e-9 * y.max(1.0),
                "y={yy}: back={back}"
            );
        }
    }
}

#[test]
fn fibonacci_numbers_match_recurrence() {
    let (mut a, mut b) = (0u64, 1u64);
    for n in 0..=92 {
        assert_eq!(fibonacci_number(n).unwrap(), a, "n={n}");
        (a, b) = (b, a.wrapping_add(b));
    }
    assert!(fibonacci_number(93).is_err());
}

#[test]
fn sweep_is_monotone_for_positive_y() {
    let rows = fibonacci_sweep(-500, 500).unwrap();
    assert_eq!(rows.len(), 1001);
    assert!(rows.windows(2).all(|w| w[0].y + 1 == w[1].y));
    let xs: Vec<f64> = rows
        .iter()
        .filter(|r| r.y >= 1)
        .map(|r| r.x.clone().unwrap())
        .collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
}
