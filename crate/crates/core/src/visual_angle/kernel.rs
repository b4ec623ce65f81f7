//! Visual-angle kernels `f(ω)` integrated over the exterior of a body.
//!
//! Every kernel is stored as `α·ω + Σ β_k sin kω`, which makes both the
//! small-ω series and the closed-form exterior integrals mechanical.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::FunctionalSet;
use crate::quadrature::compensated_sum;
use crate::scalar::Real;

/// Named kernels with known exterior integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// `ω − sin ω`
    Crofton,
    /// `sin³ω`
    Sin3,
    /// `−2 sin ω + (n+1)/(n−1) sin(n−1)ω − (n−1)/(n+1) sin(n+1)ω`
    Moment(u32),
    /// `ω − sin ω − (2/3) sin³ω`
    Teo51,
    /// `ω − 2 sin ω + sin 2ω − (1/4) sin 4ω − sin³ω`
    Teo64,
    Custom,
}

/// `f(ω) = linear·ω + Σ coeff·sin(k ω)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel<T> {
    kind: KernelKind,
    name: String,
    linear: T,
    sines: Vec<(u32, T)>,
}

/// Below this angle the kernel is evaluated from its Taylor series.
const SERIES_CUTOFF: f64 = 0.1;
const SERIES_TERMS: usize = 14;

impl<T: Real> Kernel<T> {
    /// Arbitrary kernel; sine terms with equal frequency are merged.
    pub fn custom(name: &str, linear: T, sines: &[(u32, T)]) -> Self {
        Self::build(KernelKind::Custom, name.to_string(), linear, sines)
    }

    fn build(kind: KernelKind, name: String, linear: T, sines: &[(u32, T)]) -> Self {
        let mut merged: Vec<(u32, T)> = Vec::new();
        for &(k, c) in sines {
            match merged.iter_mut().find(|(kk, _)| *kk == k) {
                Some(slot) => slot.1 = slot.1 + c,
                None => merged.push((k, c)),
            }
        }
        merged.sort_by_key(|&(k, _)| k);
        Self { kind, name, linear, sines: merged }
    }

    pub fn crofton() -> Self {
        Self::build(KernelKind::Crofton, "crofton".into(), T::one(), &[(1, -T::one())])
    }

    pub fn sin3() -> Self {
        Self::build(KernelKind::Sin3, "sin3".into(), T::zero(), &sin3_terms(T::one()))
    }

    /// Kernel of the n-th visual moment, `n ≥ 2`.
    pub fn moment(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadOrder { n });
        }
        let nf = T::from_u32(n).unwrap();
        let one = T::one();
        let sines = [
            (1, -T::lit(2.0)),
            (n - 1, (nf + one) / (nf - one)),
            (n + 1, -(nf - one) / (nf + one)),
        ];
        Ok(Self::build(KernelKind::Moment(n), format!("I{n}"), T::zero(), &sines))
    }

    pub fn teo51() -> Self {
        let mut sines = vec![(1, -T::one())];
        sines.extend(sin3_terms(-T::lit(2.0) / T::lit(3.0)));
        Self::build(KernelKind::Teo51, "teo51".into(), T::one(), &sines)
    }

    pub fn teo64() -> Self {
        let quarter = T::lit(0.25);
        let mut sines = vec![(1, -T::lit(2.0)), (2, T::one()), (4, -quarter)];
        sines.extend(sin3_terms(-T::one()));
        Self::build(KernelKind::Teo64, "teo64".into(), T::one(), &sines)
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Coefficient of `ω` in the Taylor expansion at 0.
    pub fn linear_coefficient(&self) -> T {
        self.linear + compensated_sum(self.sines.iter().map(|&(k, c)| c * T::from_u32(k).unwrap()))
    }

    /// Coefficient of `ω³` in the Taylor expansion at 0.
    pub fn cubic_coefficient(&self) -> T {
        self.series_coefficient(1)
    }

    /// Coefficient of `ω^{2j+1}` contributed by the sine terms.
    fn series_coefficient(&self, j: usize) -> T {
        let mut fact = T::one();
        for i in 2..=(2 * j + 1) {
            fact = fact * T::from_usize_lossy(i);
        }
        let sign = if j % 2 == 0 { T::one() } else { -T::one() };
        let s = compensated_sum(
            self.sines
                .iter()
                .map(|&(k, c)| c * T::from_u32(k).unwrap().powi(2 * j as i32 + 1)),
        );
        sign * s / fact
    }

    /// Check `f(ω) = O(ω³)` at 0, which makes `∫ f dP` converge at infinity.
    pub fn check_integrable(&self) -> Result<()> {
        let scale = self.linear.abs()
            + self
                .sines
                .iter()
                .fold(T::zero(), |acc, &(k, c)| acc + c.abs() * T::from_u32(k).unwrap());
        let lin = self.linear_coefficient();
        if lin.abs() > T::lit(1e-12) * scale.max(T::one()) {
            return Err(Error::NonIntegrableKernel { name: self.name.clone(), linear: lin.to_f64_lossy() });
        }
        Ok(())
    }

    /// `f(ω)`. For small `ω` of an integrable kernel the cancelling linear
    /// part is dropped and the series from `ω³` on is summed.
    pub fn eval(&self, omega: T) -> T {
        if omega.abs() < T::lit(SERIES_CUTOFF) && self.check_integrable().is_ok() {
            let w2 = omega * omega;
            let mut pow = omega * w2;
            let mut acc = T::zero();
            for j in 1..SERIES_TERMS {
                acc = acc + self.series_coefficient(j) * pow;
                pow = pow * w2;
            }
            return acc;
        }
        let terms = std::iter::once(self.linear * omega)
            .chain(self.sines.iter().map(|&(k, c)| c * (T::from_u32(k).unwrap() * omega).sin()));
        compensated_sum(terms)
    }

    /// Closed-form value of `∫_{P∉K} f(ω) dP` from the body's functionals,
    /// when one is known.
    pub fn spectral_integral(&self, f: &FunctionalSet<T>) -> Option<T> {
        let pi = T::PI();
        let l2 = f.length * f.length;
        let crofton = l2 / T::lit(2.0) - pi * f.area;
        let moment = |n: u32| {
            let nf = T::from_u32(n).unwrap();
            let sign = if n % 2 == 0 { T::one() } else { -T::one() };
            l2 + sign * pi * pi * (nf * nf - T::one()) * f.c_sq(n)
        };
        let sin3 = T::lit(0.75) * moment(2);
        match self.kind {
            KernelKind::Crofton => Some(crofton),
            KernelKind::Sin3 => Some(sin3),
            KernelKind::Moment(n) => Some(moment(n)),
            KernelKind::Teo51 => Some(crofton - T::lit(2.0) / T::lit(3.0) * sin3),
            KernelKind::Teo64 => Some(crofton + T::lit(0.5) * moment(3) - sin3),
            KernelKind::Custom => None,
        }
    }
}

/// `c·sin³ω = c·(3 sin ω − sin 3ω)/4`.
fn sin3_terms<T: Real>(c: T) -> [(u32, T); 2] {
    [(1, c * T::lit(0.75)), (3, -c * T::lit(0.25))]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> impl Iterator<Item = f64> {
        (1..2000).map(|i| i as f64 * PI / 2000.0)
    }

    #[test]
    fn named_kernels_match_direct_formulas() {
        let s3 = |w: f64| w.sin().powi(3);
        let checks: Vec<(Kernel<f64>, Box<dyn Fn(f64) -> f64>)> = vec![
            (Kernel::crofton(), Box::new(|w: f64| w - w.sin())),
            (Kernel::sin3(), Box::new(s3)),
            (Kernel::teo51(), Box::new(move |w: f64| w - w.sin() - 2.0 / 3.0 * s3(w))),
            (
                Kernel::teo64(),
                Box::new(move |w: f64| w - 2.0 * w.sin() + (2.0 * w).sin() - 0.25 * (4.0 * w).sin() - s3(w)),
            ),
            (
                Kernel::moment(5).unwrap(),
                Box::new(|w: f64| -2.0 * w.sin() + 1.5 * (4.0 * w).sin() - 4.0 / 6.0 * (6.0 * w).sin()),
            ),
        ];
        for (k, direct) in checks {
            for w in grid().filter(|w| *w > 0.2) {
                assert!((k.eval(w) - direct(w)).abs() < 1e-14, "{} at {w}", k.name());
            }
        }
    }

    #[test]
    fn second_moment_is_four_thirds_sin_cubed() {
        let i2 = Kernel::<f64>::moment(2).unwrap();
        for w in grid() {
            assert!((i2.eval(w) - 4.0 / 3.0 * w.sin().powi(3)).abs() < 1e-14);
        }
    }

    #[test]
    fn teo64_decomposes_into_crofton_moments() {
        let (t64, cr) = (Kernel::<f64>::teo64(), Kernel::<f64>::crofton());
        let (i2, i3) = (Kernel::moment(2).unwrap(), Kernel::moment(3).unwrap());
        for w in grid() {
            let combo = cr.eval(w) + 0.5 * i3.eval(w) - 9.0 / 64.0 * (16.0 / 3.0) * i2.eval(w);
            assert!((t64.eval(w) - combo).abs() < 1e-14);
        }
    }

    #[test]
    fn every_named_kernel_is_cubic_at_zero() {
        let mut kernels = vec![Kernel::<f64>::crofton(), Kernel::sin3(), Kernel::teo51(), Kernel::teo64()];
        kernels.extend((2..9).map(|n| Kernel::moment(n).unwrap()));
        for k in &kernels {
            k.check_integrable().unwrap();
            let c3 = k.cubic_coefficient();
            assert!(c3 != 0.0);
            let w = 1e-4;
            assert!((k.eval(w) / w.powi(3) - c3).abs() < 1e-5 * c3.abs().max(1.0), "{}", k.name());
        }
        // n²/3 for the moment kernels, 1/6 for Crofton, −1/2 for teo51.
        assert!((Kernel::<f64>::moment(4).unwrap().cubic_coefficient() - 16.0 / 3.0).abs() < 1e-13);
        assert!((Kernel::<f64>::crofton().cubic_coefficient() - 1.0 / 6.0).abs() < 1e-15);
        assert!((Kernel::<f64>::teo51().cubic_coefficient() + 0.5).abs() < 1e-14);
    }

    #[test]
    fn series_and_direct_agree_at_cutoff() {
        for k in [Kernel::<f64>::teo64(), Kernel::moment(7).unwrap()] {
            let w = SERIES_CUTOFF * 0.999_999_9;
            let direct: f64 = k.linear * w + k.sines.iter().map(|&(kk, c)| c * (kk as f64 * w).sin()).sum::<f64>();
            assert!((k.eval(w) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_linear_kernel() {
        let k = Kernel::<f64>::custom("sin", 0.0, &[(1, 1.0)]);
        assert!(matches!(k.check_integrable(), Err(Error::NonIntegrableKernel { .. })));
        assert!(matches!(Kernel::<f64>::moment(1), Err(Error::BadOrder { n: 1 })));
    }
}
