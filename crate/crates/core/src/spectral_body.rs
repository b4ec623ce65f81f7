//! Convex bodies represented by truncated trigonometric support functions.
//!
//! A body is stored as its mean term `a0` plus a sparse list of harmonics
//! `(n, a_n, b_n)`, so that
//!
//! ```text
//! p(φ) = a0 + Σ a_n cos nφ + b_n sin nφ
//! ```
//!
//! is the signed distance from the origin to the support line with outward
//! normal `N(φ) = (cos φ, sin φ)`. The same type also carries generalized
//! (not necessarily convex) support functions such as the evolute's or the
//! Wigner caustic's; only [`ConvexBody`] promises `p + p'' > 0`.

use std::ops::{Add, Deref};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::compensated_sum;
use crate::roots::hybrid_newton;
use crate::scalar::Real;

/// One Fourier mode `a cos nφ + b sin nφ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Harmonic<T> {
    pub n: u32,
    pub a: T,
    pub b: T,
}

impl<T: Real> Harmonic<T> {
    pub fn new(n: u32, a: T, b: T) -> Self {
        Self { n, a, b }
    }

    /// `c_n² = a_n² + b_n²`.
    #[inline]
    pub fn c_sq(&self) -> T {
        self.a * self.a + self.b * self.b
    }
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
struct RawSupport<T> {
    a0: T,
    #[serde(default)]
    harmonics: Vec<Harmonic<T>>,
}

/// Trigonometric polynomial `a0 + Σ a_n cos nφ + b_n sin nφ`, harmonics sorted
/// by frequency with at most one entry per frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "RawSupport<T>",
    bound(serialize = "T: Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct TrigSupport<T> {
    a0: T,
    harmonics: Vec<Harmonic<T>>,
}

impl<T: Real> TryFrom<RawSupport<T>> for TrigSupport<T> {
    type Error = Error;

    fn try_from(raw: RawSupport<T>) -> Result<Self> {
        Self::new(raw.a0, raw.harmonics)
    }
}

impl<T: Real> TrigSupport<T> {
    /// Build from an unordered harmonic list. Zero or duplicate frequencies
    /// and non-finite coefficients are rejected.
    pub fn new(a0: T, mut harmonics: Vec<Harmonic<T>>) -> Result<Self> {
        if !a0.is_finite() || harmonics.iter().any(|h| !h.a.is_finite() || !h.b.is_finite()) {
            return Err(Error::NonFinite);
        }
        if harmonics.iter().any(|h| h.n == 0) {
            return Err(Error::ZeroFrequency);
        }
        harmonics.sort_by_key(|h| h.n);
        if let Some(w) = harmonics.windows(2).find(|w| w[0].n == w[1].n) {
            return Err(Error::DuplicateFrequency { n: w[0].n });
        }
        Ok(Self { a0, harmonics })
    }

    /// Support function of a disk of radius `r` centred at the origin.
    pub fn circle(r: T) -> Self {
        Self { a0: r, harmonics: Vec::new() }
    }

    /// Assemble from harmonics already known to be sorted and unique.
    fn from_sorted(a0: T, harmonics: Vec<Harmonic<T>>) -> Self {
        debug_assert!(harmonics.windows(2).all(|w| w[0].n < w[1].n));
        Self { a0, harmonics }
    }

    pub fn a0(&self) -> T {
        self.a0
    }

    pub fn harmonics(&self) -> &[Harmonic<T>] {
        &self.harmonics
    }

    /// Highest frequency present (0 for a constant).
    pub fn degree(&self) -> usize {
        self.harmonics.last().map_or(0, |h| h.n as usize)
    }

    pub fn harmonic(&self, n: u32) -> Option<&Harmonic<T>> {
        self.harmonics.binary_search_by_key(&n, |h| h.n).ok().map(|i| &self.harmonics[i])
    }

    /// `(a_n, b_n)`, zero when the frequency is absent.
    pub fn coefficients(&self, n: u32) -> (T, T) {
        self.harmonic(n).map_or((T::zero(), T::zero()), |h| (h.a, h.b))
    }

    pub fn c_sq(&self, n: u32) -> T {
        self.harmonic(n).map_or(T::zero(), Harmonic::c_sq)
    }

    /// Perimeter `L = 2π a0` of the body this support function describes.
    pub fn length(&self) -> T {
        T::two_pi() * self.a0
    }

    /// `order`-th derivative of the support function at `phi`, by direct
    /// summation.
    pub fn eval(&self, phi: T, order: u32) -> T {
        let mut terms = Vec::with_capacity(self.harmonics.len() + 1);
        if order == 0 {
            terms.push(self.a0);
        }
        for h in &self.harmonics {
            let n = T::from_u32(h.n).expect("frequency fits scalar");
            let (s, c) = (n * phi).sin_cos();
            let scale = n.powi(order as i32);
            // d^k/dφ^k of (a cos + b sin) cycles with period 4.
            let v = match order % 4 {
                0 => h.a * c + h.b * s,
                1 => -h.a * s + h.b * c,
                2 => -h.a * c - h.b * s,
                _ => h.a * s - h.b * c,
            };
            terms.push(scale * v);
        }
        compensated_sum(terms)
    }

    /// `[p, p', p'', p''']` at `phi` in one pass.
    pub fn eval_jet(&self, phi: T) -> [T; 4] {
        let mut p = self.a0;
        let (mut d1, mut d2, mut d3) = (T::zero(), T::zero(), T::zero());
        for h in &self.harmonics {
            let n = T::from_u32(h.n).expect("frequency fits scalar");
            let (s, c) = (n * phi).sin_cos();
            let v0 = h.a * c + h.b * s;
            let v1 = h.b * c - h.a * s;
            p = p + v0;
            d1 = d1 + n * v1;
            d2 = d2 - n * n * v0;
            d3 = d3 - n * n * n * v1;
        }
        [p, d1, d2, d3]
    }

    /// Radius of curvature `ρ = p + p''`.
    pub fn radius_of_curvature(&self, phi: T) -> T {
        let [p, _, d2, _] = self.eval_jet(phi);
        p + d2
    }

    /// Boundary point `γ(φ) = p N(φ) + p' N'(φ)`; for a generalized support
    /// this is the envelope point.
    pub fn envelope_point(&self, phi: T) -> [T; 2] {
        let [p, d1, _, _] = self.eval_jet(phi);
        let (s, c) = phi.sin_cos();
        [p * c - d1 * s, p * s + d1 * c]
    }

    /// Global minimum of `ρ` and where it is attained.
    ///
    /// Samples `16·max(N, 4)` points, then polishes every sampled local minimum
    /// with a bracketed Newton iteration on `ρ'` and keeps the lowest.
    pub fn min_curvature_radius(&self) -> (T, T) {
        let samples = 16 * self.degree().max(4);
        let h = T::two_pi() / T::from_usize_lossy(samples);
        let rho: Vec<T> = (0..samples)
            .map(|j| self.radius_of_curvature(h * T::from_usize_lossy(j)))
            .collect();
        let rho_prime = |phi: T| -> (T, T) {
            let d1 = self.eval(phi, 1) + self.eval(phi, 3);
            let d2 = self.eval(phi, 2) + self.eval(phi, 4);
            (d1, d2)
        };
        let ftol = T::lit(1e-12) * self.a0.abs();
        let xtol = T::epsilon() * T::lit(8.0);

        let mut best: Option<(T, T)> = None;
        for j in 0..samples {
            let prev = rho[(j + samples - 1) % samples];
            let next = rho[(j + 1) % samples];
            if !(rho[j] <= prev && rho[j] <= next) {
                continue;
            }
            let phi = h * T::from_usize_lossy(j);
            let (lo, hi) = (phi - h, phi + h);
            let (flo, _) = rho_prime(lo);
            let (fhi, _) = rho_prime(hi);
            let (arg, val) = if flo < T::zero() && fhi > T::zero() {
                let x = hybrid_newton(rho_prime, lo, hi, ftol, xtol);
                (x, self.radius_of_curvature(x))
            } else {
                (phi, rho[j])
            };
            let arg = wrap_angle(arg);
            let tie = T::lit(1e-13) * (self.a0.abs() + T::one());
            best = match best {
                None => Some((val, arg)),
                Some((bv, barg)) => {
                    if val < bv - tie || ((val - bv).abs() <= tie && arg < barg) {
                        Some((val, arg))
                    } else {
                        Some((bv, barg))
                    }
                }
            };
        }
        // A constant ρ has every sample as a local minimum, so `best` is set.
        best.unwrap_or((rho[0], T::zero()))
    }

    /// Check strict convexity (`min ρ ≥ eps`) and a positive mean term.
    pub fn validate(self, eps: T) -> Result<ConvexBody<T>> {
        if !(self.a0 > T::zero()) {
            return Err(Error::NonpositiveMean { a0: self.a0.to_f64_lossy() });
        }
        let (rho_min, phi_at) = self.min_curvature_radius();
        if rho_min < eps {
            return Err(Error::NotStrictlyConvex {
                rho_min: rho_min.to_f64_lossy(),
                phi_at: phi_at.to_f64_lossy(),
            });
        }
        Ok(ConvexBody(self))
    }

    /// [`validate`](Self::validate) with the default tolerance `1e-9·a0`.
    pub fn validate_default(self) -> Result<ConvexBody<T>> {
        let eps = default_convexity_eps(self.a0);
        self.validate(eps)
    }

    /// Steiner point `(a_1, b_1)`.
    pub fn steiner_point(&self) -> [T; 2] {
        let (a, b) = self.coefficients(1);
        [a, b]
    }

    /// Support function about the Steiner point: the degree-1 harmonic removed.
    pub fn recentered(&self) -> Self {
        let harmonics = self.harmonics.iter().copied().filter(|h| h.n != 1).collect();
        Self::from_sorted(self.a0, harmonics)
    }

    /// Support function of the Minkowski sum (coefficient-wise addition).
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.harmonics.len() + other.harmonics.len());
        let (mut i, mut j) = (0, 0);
        let (xs, ys) = (&self.harmonics, &other.harmonics);
        while i < xs.len() || j < ys.len() {
            match (xs.get(i), ys.get(j)) {
                (Some(x), Some(y)) if x.n == y.n => {
                    out.push(Harmonic::new(x.n, x.a + y.a, x.b + y.b));
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x.n < y.n => {
                    out.push(*x);
                    i += 1;
                }
                (Some(_), Some(y)) => {
                    out.push(*y);
                    j += 1;
                }
                (Some(x), None) => {
                    out.push(*x);
                    i += 1;
                }
                (None, Some(y)) => {
                    out.push(*y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self::from_sorted(self.a0 + other.a0, out)
    }

    /// Parallel curve at signed distance `r`. The result may fail to be convex.
    pub fn offset(&self, r: T) -> Self {
        Self::from_sorted(self.a0 + r, self.harmonics.clone())
    }

    /// Multiply every coefficient by `s`.
    pub fn scaled(&self, s: T) -> Self {
        let harmonics = self.harmonics.iter().map(|h| Harmonic::new(h.n, s * h.a, s * h.b)).collect();
        Self::from_sorted(s * self.a0, harmonics)
    }

    /// Support function of the body rotated counter-clockwise by `theta`:
    /// `p_rot(φ) = p(φ − θ)`.
    pub fn rotated(&self, theta: T) -> Self {
        let harmonics = self
            .harmonics
            .iter()
            .map(|h| {
                let n = T::from_u32(h.n).expect("frequency fits scalar");
                let (s, c) = (n * theta).sin_cos();
                Harmonic::new(h.n, h.a * c - h.b * s, h.a * s + h.b * c)
            })
            .collect();
        Self::from_sorted(self.a0, harmonics)
    }

    /// Support function of the body translated by `v`; only the degree-1
    /// harmonic changes.
    pub fn translated(&self, v: [T; 2]) -> Self {
        if v[0] == T::zero() && v[1] == T::zero() {
            return self.clone();
        }
        let shift = Self::from_sorted(T::zero(), vec![Harmonic::new(1, v[0], v[1])]);
        self.minkowski_sum(&shift)
    }

    /// Rotate by `theta` about the origin, then translate by `v`.
    pub fn rigid_motion(&self, theta: T, v: [T; 2]) -> Self {
        self.rotated(theta).translated(v)
    }

    /// Derivative `p'` as a trigonometric polynomial.
    pub fn derivative(&self) -> Self {
        let harmonics = self
            .harmonics
            .iter()
            .map(|h| {
                let n = T::from_u32(h.n).expect("frequency fits scalar");
                Harmonic::new(h.n, n * h.b, -n * h.a)
            })
            .collect();
        Self::from_sorted(T::zero(), harmonics)
    }

    /// Odd part `½(p(φ) − p(φ+π))`: the Wigner caustic's support function.
    pub fn odd_part(&self) -> Self {
        let harmonics = self.harmonics.iter().copied().filter(|h| h.n % 2 == 1).collect();
        Self::from_sorted(T::zero(), harmonics)
    }

    /// Constant width test: every even harmonic with `n ≥ 2` is within `tol`.
    /// Returns the width `2 a0` when it holds.
    pub fn constant_width(&self, tol: T) -> Option<T> {
        let even_free = self
            .harmonics
            .iter()
            .filter(|h| h.n % 2 == 0)
            .all(|h| h.a.abs() <= tol && h.b.abs() <= tol);
        even_free.then(|| T::lit(2.0) * self.a0)
    }

    /// Values on the uniform grid `2πj/m` as `(φ, p)` pairs.
    pub fn sample(&self, m: usize) -> Vec<(T, T)> {
        let h = T::two_pi() / T::from_usize_lossy(m);
        (0..m)
            .map(|j| {
                let phi = h * T::from_usize_lossy(j);
                (phi, self.eval(phi, 0))
            })
            .collect()
    }

    /// Discrete Fourier analysis of samples on a uniform grid of `M` points
    /// (any starting angle), keeping frequencies up to `degree`.
    ///
    /// Coefficients below the round-off floor of the data are dropped.
    pub fn from_samples(values: &[(T, T)], degree: usize) -> Result<Self> {
        let m = values.len();
        let needed = 2 * degree + 2;
        if m < needed.max(2) {
            return Err(Error::InsufficientSamples { samples: m, degree, needed: needed.max(2) });
        }
        let step = T::two_pi() / T::from_usize_lossy(m);
        let start = values[0].0;
        let grid_tol = T::lit(1e-9).max(T::epsilon() * T::lit(64.0)) * T::two_pi();
        for (j, &(phi, p)) in values.iter().enumerate() {
            let expected = start + step * T::from_usize_lossy(j);
            if (phi - expected).abs() > grid_tol || !p.is_finite() {
                return Err(Error::GridNotUniform { index: j, phi: phi.to_f64_lossy() });
            }
        }
        let mf = T::from_usize_lossy(m);
        let two = T::lit(2.0);
        let a0 = compensated_sum(values.iter().map(|v| v.1)) / mf;
        let peak = values.iter().fold(T::zero(), |acc, v| acc.max(v.1.abs()));
        let floor = T::epsilon() * T::lit(64.0) * peak;
        let mut harmonics = Vec::new();
        for n in 1..=degree {
            let nf = T::from_usize_lossy(n);
            let a = two / mf * compensated_sum(values.iter().map(|&(phi, p)| p * (nf * phi).cos()));
            let b = two / mf * compensated_sum(values.iter().map(|&(phi, p)| p * (nf * phi).sin()));
            if a.abs() > floor || b.abs() > floor {
                harmonics.push(Harmonic::new(n as u32, a, b));
            }
        }
        Ok(Self::from_sorted(a0, harmonics))
    }

    pub fn to_json(&self) -> Result<String>
    where
        T: Serialize,
    {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self>
    where
        T: for<'de> Deserialize<'de>,
    {
        Ok(serde_json::from_str(text)?)
    }
}

impl<T: Real> Add for &TrigSupport<T> {
    type Output = TrigSupport<T>;

    fn add(self, rhs: Self) -> TrigSupport<T> {
        self.minkowski_sum(rhs)
    }
}

/// Default strict-convexity tolerance `1e-9·a0`.
pub fn default_convexity_eps<T: Real>(a0: T) -> T {
    T::lit(1e-9) * a0.abs()
}

/// Reduce an angle into `[0, 2π)`.
pub fn wrap_angle<T: Real>(phi: T) -> T {
    let tau = T::two_pi();
    let r = phi % tau;
    let r = if r < T::zero() { r + tau } else { r };
    if r >= tau {
        T::zero()
    } else {
        r
    }
}

/// A support function that passed [`TrigSupport::validate`]: `a0 > 0` and
/// `p + p'' ≥ eps > 0` everywhere.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ConvexBody<T>(TrigSupport<T>);

impl<T> Deref for ConvexBody<T> {
    type Target = TrigSupport<T>;

    fn deref(&self) -> &TrigSupport<T> {
        &self.0
    }
}

impl<T: Real> ConvexBody<T> {
    pub fn support(&self) -> &TrigSupport<T> {
        &self.0
    }

    pub fn into_support(self) -> TrigSupport<T> {
        self.0
    }

    /// The same body about its Steiner point. Convexity is preserved.
    pub fn steiner_centered(&self) -> Self {
        ConvexBody(self.0.recentered())
    }

    /// A rigid motion of a convex body is convex.
    pub fn rigid_motion(&self, theta: T, v: [T; 2]) -> Self {
        ConvexBody(self.0.rigid_motion(theta, v))
    }

    /// Minkowski sums of convex bodies are convex.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        ConvexBody(self.0.minkowski_sum(&other.0))
    }
}

/// Hypocycloid traced by a circle of radius `r` rolling inside one of radius
/// `k·r`, with `k = m/n` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypocycloidSpec<T> {
    pub m: u32,
    pub n: u32,
    pub r: T,
}

impl<T: Real> HypocycloidSpec<T> {
    pub fn new(m: u32, n: u32, r: T) -> Result<Self> {
        if n == 0 || m <= 2 * n {
            return Err(Error::BadSpec(format!("hypocycloid needs m > 2n, got m={m}, n={n}")));
        }
        if gcd(m, n) != 1 {
            return Err(Error::BadSpec(format!("hypocycloid needs coprime m, n, got m={m}, n={n}")));
        }
        if !(r > T::zero()) || !r.is_finite() {
            return Err(Error::BadSpec("rolling radius must be positive".into()));
        }
        Ok(Self { m, n, r })
    }

    pub fn k(&self) -> T {
        T::from_u32(self.m).unwrap() / T::from_u32(self.n).unwrap()
    }

    /// Radius of the fixed circle, `k·r`.
    pub fn fixed_radius(&self) -> T {
        self.k() * self.r
    }

    pub fn cusps(&self) -> u32 {
        self.m
    }

    /// Parameter range `[0, 2nπ]` that closes the curve.
    pub fn period(&self) -> T {
        T::two_pi() * T::from_u32(self.n).unwrap()
    }

    /// `(x(t), y(t))` on the rolling parametrization.
    pub fn point(&self, t: T) -> [T; 2] {
        let k1 = self.k() - T::one();
        let r = self.r;
        [r * k1 * t.sin() - r * (k1 * t).sin(), r * k1 * t.cos() + r * (k1 * t).cos()]
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
