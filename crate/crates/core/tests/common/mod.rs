#![allow(dead_code)]

use hurwitz_core::{sweep_spec, Body, Harmonic, Support};

pub fn body(a0: f64, hs: &[(u32, f64, f64)]) -> Body {
    Support::new(a0, hs.iter().map(|&(n, a, b)| Harmonic::new(n, a, b)).collect())
        .unwrap()
        .validate_default()
        .unwrap()
}

pub fn circle() -> Body {
    Support::circle(1.0).validate_default().unwrap()
}

/// Parallel body of an astroid.
pub fn ast() -> Body {
    body(1.0, &[(2, 0.0, 0.2)])
}

/// Parallel body of a deltoid.
pub fn delt() -> Body {
    body(1.0, &[(3, 0.1, 0.0)])
}

/// Constant width, harmonics 3 and 5.
pub fn cw35() -> Body {
    body(1.0, &[(3, 0.05, 0.0), (5, 0.0, 0.01)])
}

pub fn mix() -> Body {
    body(1.0, &[(2, 0.0, 0.1), (5, 0.02, 0.0)])
}

pub fn ast_plus_delt() -> Body {
    ast().minkowski_sum(&delt())
}

pub const SWEEP_SEED: u64 = 20_260_416;

/// The seeded sweep used by the acceptance checks: degrees 2..=8, every
/// other body constant width.
pub fn sweep(count: u64) -> Vec<Body> {
    (0..count).map(|i| sweep_spec(SWEEP_SEED, i).construct().unwrap()).collect()
}
