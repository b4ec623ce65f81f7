//! Quadrature engines: compensated periodic trapezoid, composite Simpson and
//! Gauss-Legendre panels.
//!
//! All reductions run in a fixed index order through [`CompensatedSum`], so a
//! result depends only on its inputs and never on how work was scheduled.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Neumaier (improved Kahan-Babuska) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), carry: T::zero() }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> T {
        self.sum + self.carry
    }
}

impl<T: Real> Extend<T> for CompensatedSum<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(iter: I) -> T {
    let mut acc = CompensatedSum::new();
    acc.extend(iter);
    acc.total()
}

/// The `m` nodes `2πj/m`, `j = 0..m`.
pub fn periodic_nodes<T: Real>(m: usize) -> Vec<T> {
    let h = T::two_pi() / T::from_usize_lossy(m);
    (0..m).map(|j| h * T::from_usize_lossy(j)).collect()
}

/// Periodic trapezoid rule over `[0, 2π)` from samples on the uniform grid.
///
/// Exact for trigonometric polynomials of degree `< m`. A pure `cos(mφ)` aliases
/// onto the constant mode and integrates to `2π`.
pub fn periodic_integral<T: Real>(samples: &[T]) -> Result<T> {
    if samples.len() < 2 {
        return Err(Error::EmptyGrid { got: samples.len(), min: 2 });
    }
    let h = T::two_pi() / T::from_usize_lossy(samples.len());
    Ok(h * compensated_sum(samples.iter().copied()))
}

/// Periodic trapezoid rule applied to a function sampled at `m` nodes.
pub fn periodic_integral_fn<T: Real, F: Fn(T) -> T>(m: usize, f: F) -> Result<T> {
    let samples: Vec<T> = periodic_nodes(m).into_iter().map(f).collect();
    periodic_integral(&samples)
}

/// Composite Simpson rule on `[a, b]` with `panels` subintervals (rounded up
/// to even).
pub fn simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, panels: usize) -> Result<T> {
    if !(b > a) {
        return Err(Error::BadInterval { a: a.to_f64_lossy(), b: b.to_f64_lossy() });
    }
    let panels = (panels.max(2) + 1) & !1;
    let h = (b - a) / T::from_usize_lossy(panels);
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let mut acc = CompensatedSum::new();
    for i in 0..=panels {
        let w = if i == 0 || i == panels {
            T::one()
        } else if i % 2 == 1 {
            four
        } else {
            two
        };
        acc.add(w * f(a + h * T::from_usize_lossy(i)));
    }
    Ok(acc.total() * h / T::lit(3.0))
}

/// Gauss-Legendre rule with `n` nodes on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre needs at least one node");
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = n as f64;
        // Roots are symmetric; compute the upper half with Newton in f64 and
        // mirror.
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[n - 1 - i] = T::lit(x);
            nodes[i] = T::lit(-x);
            weights[n - 1 - i] = T::lit(w);
            weights[i] = T::lit(w);
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped affinely onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }

    /// Integral of `f` over `[a, b]`.
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        compensated_sum(self.mapped(a, b).map(|(x, w)| w * f(x)))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trapezoid_cos_squared() {
        let v = periodic_integral_fn(8, |x: f64| x.cos().powi(2)).unwrap();
        assert!((v - PI).abs() < 1e-15);
    }

    #[test]
    fn trapezoid_constant() {
        let v = periodic_integral(&[1.0f64; 4]).unwrap();
        assert!((v - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn trapezoid_aliases_top_mode() {
        // cos(Mφ) sampled at M nodes is identically 1.
        let m = 16;
        let v = periodic_integral_fn(m, |x: f64| (m as f64 * x).cos()).unwrap();
        assert!((v - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_rejects_short_grid() {
        assert!(matches!(periodic_integral::<f64>(&[1.0]), Err(Error::EmptyGrid { .. })));
        assert!(periodic_integral::<f64>(&[]).is_err());
    }

    #[test]
    fn compensated_beats_naive() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(xs), 2.0);
    }

    #[test]
    fn simpson_cubic_exact() {
        let v = simpson(|x: f64| x * x * x - x, 0.0, 2.0, 4).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
        assert!(matches!(simpson(|x: f64| x, 1.0, 1.0, 4), Err(Error::BadInterval { .. })));
    }

    #[test]
    fn gauss_legendre_polynomial_exactness() {
        let gl = GaussLegendre::<f64>::new(10);
        let w: f64 = gl.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
        // degree 19 is exact with 10 nodes
        let v = gl.integrate(0.0, 1.0, |x| x.powi(19));
        assert!((v - 0.05).abs() < 1e-14);
        let v = gl.integrate(0.0, PI, f64::sin);
        assert!((v - 2.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_legendre_odd_count_has_center_node() {
        let gl = GaussLegendre::<f64>::new(7);
        assert!(gl.nodes[3].abs() < 1e-15);
        assert!(gl.nodes.windows(2).all(|w| w[0] < w[1]));
    }
}
