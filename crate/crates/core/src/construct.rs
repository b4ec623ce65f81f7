//! Named body families and seeded random bodies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral_body::{ConvexBody, Harmonic, TrigSupport};

/// Decay constant `C` in `|c_n| ≤ C·n⁻³` for random draws.
const RANDOM_DECAY_SCALE: f64 = 0.5;
/// Amplitude of the random translation (degree-1) term.
const RANDOM_SHIFT_SCALE: f64 = 0.5;
const MAX_HALVINGS: u32 = 60;

/// Recipe for a convex body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub enum BodySpec<T> {
    Circle { radius: T },
    /// Parallel body of an astroid: `a0 + amp·sin 2φ`.
    AstroidParallel { a0: T, amp: T },
    /// Parallel body of a Steiner curve (deltoid): `a0 + amp·cos 3φ`.
    DeltoidParallel { a0: T, amp: T },
    /// `a0 + amp·cos kφ`; the envelope of `amp·cos kφ` is a hypocycloid.
    HypocycloidParallel { k: u32, a0: T, amp: T },
    Random { seed: u64, degree: u32, constant_width: bool },
    Explicit { body: TrigSupport<T> },
}

impl<T: Real> BodySpec<T> {
    /// Build and validate the body.
    pub fn construct(&self) -> Result<ConvexBody<T>> {
        match self {
            BodySpec::Circle { radius } => TrigSupport::circle(*radius).validate_default(),
            BodySpec::AstroidParallel { a0, amp } => single_mode(*a0, 2, T::zero(), *amp),
            BodySpec::DeltoidParallel { a0, amp } => single_mode(*a0, 3, *amp, T::zero()),
            BodySpec::HypocycloidParallel { k, a0, amp } => {
                if *k < 3 {
                    return Err(Error::BadSpec(format!("hypocycloid frequency must be >= 3, got {k}")));
                }
                single_mode(*a0, *k, *amp, T::zero())
            }
            BodySpec::Random { seed, degree, constant_width } => random_body(*seed, *degree, *constant_width),
            BodySpec::Explicit { body } => body.clone().validate_default(),
        }
    }
}

/// `a0 + a cos nφ + b sin nφ`, checked against `amp·(n²−1) < a0`.
fn single_mode<T: Real>(a0: T, n: u32, a: T, b: T) -> Result<ConvexBody<T>> {
    if !(a0 > T::zero()) {
        return Err(Error::NonpositiveMean { a0: a0.to_f64_lossy() });
    }
    let amp = (a * a + b * b).sqrt();
    let factor = T::from_u32(n * n - 1).expect("small frequency");
    if !(amp * factor < a0) {
        return Err(Error::AmplitudeTooLarge { amp: amp.to_f64_lossy(), bound: (a0 / factor).to_f64_lossy() });
    }
    TrigSupport::new(a0, vec![Harmonic::new(n, a, b)])?.validate_default()
}

/// Seeded random body of the given degree with `a0 = 1`.
///
/// Coefficients are drawn uniformly with `|a_n|, |b_n| ≤ C·n⁻³`; even modes are
/// zeroed for constant width. Amplitudes of `n ≥ 2` are halved until the draw
/// is strictly convex.
pub fn random_body<T: Real>(seed: u64, degree: u32, constant_width: bool) -> Result<ConvexBody<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a0 = T::one();
    let mut harmonics = Vec::with_capacity(degree as usize);
    for n in 1..=degree {
        let scale = if n == 1 { RANDOM_SHIFT_SCALE } else { RANDOM_DECAY_SCALE / f64::from(n).powi(3) };
        let a: f64 = rng.gen_range(-1.0..=1.0) * scale;
        let b: f64 = rng.gen_range(-1.0..=1.0) * scale;
        if constant_width && n % 2 == 0 {
            continue;
        }
        harmonics.push(Harmonic::new(n, T::lit(a), T::lit(b)));
    }
    let mut body = TrigSupport::new(a0, harmonics)?;
    for _ in 0..=MAX_HALVINGS {
        match body.clone().validate_default() {
            Ok(valid) => return Ok(valid),
            Err(Error::NotStrictlyConvex { .. }) => {
                let half = T::lit(0.5);
                let shrunk = body
                    .harmonics()
                    .iter()
                    .map(|h| if h.n == 1 { *h } else { Harmonic::new(h.n, h.a * half, h.b * half) })
                    .collect();
                body = TrigSupport::new(a0, shrunk)?;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::RandomBodyRejected { halvings: MAX_HALVINGS })
}

/// Lowest and highest degree drawn by [`sweep_spec`].
pub const SWEEP_DEGREES: (u32, u32) = (2, 8);

/// Body `index` of a seeded sweep. Degrees cycle through
/// [`SWEEP_DEGREES`], odd indices are constant width, and each body's seed
/// is drawn from stream `index` of a generator keyed by `master`, so any
/// subset can be rebuilt independently.
pub fn sweep_spec<T>(master: u64, index: u64) -> BodySpec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    let (lo, hi) = SWEEP_DEGREES;
    let degree = lo + (index % u64::from(hi - lo + 1)) as u32;
    BodySpec::Random { seed: rng.gen(), degree, constant_width: index % 2 == 1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_specs_are_reproducible() {
        let a: Vec<BodySpec<f64>> = (0..20).map(|i| sweep_spec(9, i)).collect();
        let b: Vec<BodySpec<f64>> = (0..20).map(|i| sweep_spec(9, i)).collect();
        assert_eq!(a, b);
        assert_ne!(sweep_spec::<f64>(9, 0), sweep_spec(10, 0));
        for (i, spec) in a.iter().enumerate() {
            let BodySpec::Random { degree, constant_width, .. } = spec else { panic!() };
            assert!((2..=8).contains(degree));
            assert_eq!(*constant_width, i % 2 == 1);
            let body = spec.construct().unwrap();
            assert_eq!(body.constant_width(0.0).is_some(), *constant_width);
        }
    }

    #[test]
    fn astroid_parallel_matches_fixture() {
        let body = BodySpec::AstroidParallel { a0: 1.0, amp: 0.2 }.construct().unwrap();
        assert_eq!(body.support(), &TrigSupport::new(1.0, vec![Harmonic::new(2, 0.0, 0.2)]).unwrap());
    }

    #[test]
    fn amplitude_bounds() {
        let err = BodySpec::DeltoidParallel { a0: 1.0, amp: 0.13 }.construct().unwrap_err();
        assert!(matches!(err, Error::AmplitudeTooLarge { .. }));
        assert!(BodySpec::DeltoidParallel { a0: 1.0, amp: 0.12 }.construct().is_ok());
        assert!(BodySpec::AstroidParallel { a0: 1.0, amp: 0.4 }.construct().is_err());
        assert!(BodySpec::AstroidParallel { a0: 1.0, amp: -0.3 }.construct().is_ok());
        assert!(BodySpec::HypocycloidParallel { k: 5, a0: 1.0, amp: 1.0 / 24.0 }.construct().is_err());
        assert!(BodySpec::HypocycloidParallel { k: 5, a0: 1.0, amp: 0.04 }.construct().is_ok());
        assert!(BodySpec::HypocycloidParallel { k: 2, a0: 1.0, amp: 0.01 }.construct().is_err());
        assert!(matches!(
            BodySpec::Circle { radius: -1.0 }.construct().unwrap_err(),
            Error::NonpositiveMean { .. }
        ));
    }

    #[test]
    fn random_constant_width_has_no_even_modes() {
        let body = random_body::<f64>(7, 6, true).unwrap();
        for n in [2, 4, 6] {
            assert_eq!(body.c_sq(n), 0.0);
        }
        assert!(body.constant_width(0.0).is_some());
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_body::<f64>(42, 8, false).unwrap();
        let b = random_body::<f64>(42, 8, false).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_body::<f64>(43, 8, false).unwrap());
        assert_eq!(a.degree(), 8);
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = BodySpec::HypocycloidParallel { k: 5, a0: 1.0, amp: 0.01 };
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"kind\":\"hypocycloid_parallel\""));
        let back: BodySpec<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }
}
