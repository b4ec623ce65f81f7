//! Scalar functionals of a convex body, computed along two independent routes.
//!
//! [`functionals_spectral`] evaluates closed-form sums over `c_n²`;
//! [`functionals_quadrature`] samples the support function and integrates with
//! the periodic trapezoid rule. Each route is the other's oracle.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{compensated_sum, periodic_integral, periodic_nodes, simpson};
use crate::scalar::Real;
use crate::spectral_body::{ConvexBody, TrigSupport};

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    Spectral,
    Quadrature,
}

/// Every scalar functional of one body.
///
/// `pedal_area`, `delta2_sq` and `cn_sq` refer to the Steiner-centred support
/// function; the others do not depend on the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct FunctionalSet<T> {
    /// Perimeter `L`.
    #[serde(rename = "L")]
    pub length: T,
    /// Enclosed area `F`.
    #[serde(rename = "F")]
    pub area: T,
    /// Isoperimetric deficit `L² − 4πF`.
    #[serde(rename = "Delta")]
    pub deficit: T,
    /// Signed area of the evolute, counted with multiplicity (≤ 0).
    #[serde(rename = "Fe")]
    pub evolute_area: T,
    /// `π|Fe| − Δ`.
    pub hurwitz_deficit: T,
    /// Area `A` of the pedal curve about the Steiner point.
    #[serde(rename = "A")]
    pub pedal_area: T,
    /// `A − F`.
    #[serde(rename = "AmF")]
    pub pedal_excess: T,
    /// Squared L² distance to the Steiner disk's support function.
    pub delta2_sq: T,
    /// Signed area of the Wigner caustic, full-period swept area.
    #[serde(rename = "Aw")]
    pub wigner_area: T,
    /// Wirtinger deficit of `q = p − L/2π`.
    #[serde(rename = "Wq")]
    pub wirtinger_q: T,
    pub steiner: [T; 2],
    /// `c_n²` of the Steiner-centred support function, `n = 2..=N`.
    pub cn_sq: BTreeMap<u32, T>,
    pub path: Path,
}

impl<T: Real> FunctionalSet<T> {
    /// `c_n²`, zero when absent.
    pub fn c_sq(&self, n: u32) -> T {
        self.cn_sq.get(&n).copied().unwrap_or_else(T::zero)
    }

    /// Scalar fields by name, in a fixed order.
    pub fn scalar_fields(&self) -> [(&'static str, T); 12] {
        [
            ("L", self.length),
            ("F", self.area),
            ("Delta", self.deficit),
            ("Fe", self.evolute_area),
            ("hurwitz_deficit", self.hurwitz_deficit),
            ("A", self.pedal_area),
            ("AmF", self.pedal_excess),
            ("delta2_sq", self.delta2_sq),
            ("Aw", self.wigner_area),
            ("Wq", self.wirtinger_q),
            ("steiner_x", self.steiner[0]),
            ("steiner_y", self.steiner[1]),
        ]
    }
}

/// Node count of the periodic trapezoid rule used by the quadrature route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadratureGrid {
    pub m: usize,
}

impl QuadratureGrid {
    /// Smallest admissible node count for a body of degree `n`: `4N + 8`.
    pub fn minimum(degree: usize) -> usize {
        4 * degree + 8
    }

    /// Default grid: `max(256, next power of two ≥ 4N + 8)`.
    pub fn for_degree(degree: usize) -> Self {
        Self { m: Self::minimum(degree).next_power_of_two().max(256) }
    }

    /// Explicit node count, checked against the body degree.
    pub fn new(m: usize, degree: usize) -> Result<Self> {
        let min = Self::minimum(degree);
        if m < min {
            return Err(Error::BadConfig(format!("quadrature grid of {m} nodes is below 4N+8 = {min}")));
        }
        Ok(Self { m })
    }
}

fn t_u32<T: Real>(n: u32) -> T {
    T::from_u32(n).expect("frequency fits scalar")
}

/// Closed-form functionals from the Fourier coefficients.
pub fn functionals_spectral<T: Real>(body: &ConvexBody<T>) -> FunctionalSet<T> {
    let pi = T::PI();
    let half_pi = pi / T::lit(2.0);
    let a0 = body.a0();
    let centered = body.recentered();
    let modes: Vec<(T, T)> = centered
        .harmonics()
        .iter()
        .filter(|h| h.n >= 2)
        .map(|h| (t_u32::<T>(h.n), h.c_sq()))
        .collect();
    let odd: Vec<(T, T)> = centered
        .harmonics()
        .iter()
        .filter(|h| h.n >= 3 && h.n % 2 == 1)
        .map(|h| (t_u32::<T>(h.n), h.c_sq()))
        .collect();
    let one = T::one();
    let four = T::lit(4.0);

    let sum_n2m1 = compensated_sum(modes.iter().map(|&(n, c)| (n * n - one) * c));
    let sum_evolute = compensated_sum(modes.iter().map(|&(n, c)| n * n * (n * n - one) * c));
    let sum_hurwitz = compensated_sum(modes.iter().map(|&(n, c)| (n * n - one) * (n * n - four) * c));
    let sum_n2 = compensated_sum(modes.iter().map(|&(n, c)| n * n * c));
    let sum_c = compensated_sum(modes.iter().map(|&(_, c)| c));
    let sum_odd = compensated_sum(odd.iter().map(|&(n, c)| (n * n - one) * c));

    let length = T::two_pi() * a0;
    let area = pi * a0 * a0 - half_pi * sum_n2m1;
    let pedal_excess = half_pi * sum_n2;
    let cn_sq = (2..=centered.degree() as u32).map(|n| (n, centered.c_sq(n))).collect();

    FunctionalSet {
        length,
        area,
        deficit: T::lit(2.0) * pi * pi * sum_n2m1,
        evolute_area: -half_pi * sum_evolute,
        hurwitz_deficit: pi * pi / T::lit(2.0) * sum_hurwitz,
        pedal_area: area + pedal_excess,
        pedal_excess,
        delta2_sq: pi * sum_c,
        wigner_area: -half_pi * sum_odd,
        wirtinger_q: pi * sum_n2m1,
        steiner: body.steiner_point(),
        cn_sq,
        path: Path::Spectral,
    }
}

/// Functionals by periodic trapezoid quadrature of sampled integrands.
pub fn functionals_quadrature<T: Real>(body: &ConvexBody<T>, grid: QuadratureGrid) -> Result<FunctionalSet<T>> {
    let degree = body.degree();
    let grid = QuadratureGrid::new(grid.m, degree)?;
    let m = grid.m;
    let nodes: Vec<T> = periodic_nodes(m);
    let jets: Vec<[T; 4]> = nodes.iter().map(|&phi| body.eval_jet(phi)).collect();
    let pi = T::PI();
    let half = T::lit(0.5);
    let integrate = |f: &dyn Fn(usize) -> T| -> Result<T> {
        let samples: Vec<T> = (0..m).map(f).collect();
        periodic_integral(&samples)
    };

    let length = integrate(&|j| jets[j][0])?;
    let area = half * integrate(&|j| jets[j][0] * jets[j][0] - jets[j][1] * jets[j][1])?;
    let sx = integrate(&|j| jets[j][0] * nodes[j].cos())? / pi;
    let sy = integrate(&|j| jets[j][0] * nodes[j].sin())? / pi;

    // Support function about the Steiner point.
    let centered: Vec<T> = (0..m)
        .map(|j| {
            let (s, c) = nodes[j].sin_cos();
            jets[j][0] - sx * c - sy * s
        })
        .collect();
    let pedal_area = half * integrate(&|j| centered[j] * centered[j])?;
    let mean = length / T::two_pi();
    let delta2_sq = integrate(&|j| (centered[j] - mean) * (centered[j] - mean))?;

    let evolute_area = generalized_area(
        |phi| {
            let [_, d1, _, d3] = body.eval_jet(phi - pi / T::lit(2.0));
            (d1, d3)
        },
        T::zero(),
        T::two_pi(),
        m,
    )?;
    let wigner_area = generalized_area(
        |phi| {
            let [p, _, d2, _] = body.eval_jet(phi);
            let [pp, _, dd2, _] = body.eval_jet(phi + pi);
            (half * (p - pp), half * (d2 - dd2))
        },
        T::zero(),
        T::two_pi(),
        m,
    )?;
    let wirtinger_q = integrate(&|j| {
        let q = jets[j][0] - mean;
        jets[j][1] * jets[j][1] - q * q
    })?;

    let deficit = length * length - T::lit(4.0) * pi * area;
    let mf = T::from_usize_lossy(m);
    let two = T::lit(2.0);
    let cn_sq = (2..=degree as u32)
        .map(|n| {
            let nf = t_u32::<T>(n);
            let a = two / mf * compensated_sum((0..m).map(|j| centered[j] * (nf * nodes[j]).cos()));
            let b = two / mf * compensated_sum((0..m).map(|j| centered[j] * (nf * nodes[j]).sin()));
            (n, a * a + b * b)
        })
        .collect();

    Ok(FunctionalSet {
        length,
        area,
        deficit,
        evolute_area,
        hurwitz_deficit: pi * evolute_area.abs() - deficit,
        pedal_area,
        pedal_excess: pedal_area - area,
        delta2_sq,
        wigner_area,
        wirtinger_q,
        steiner: [sx, sy],
        cn_sq,
        path: Path::Quadrature,
    })
}

/// Signed area swept by the envelope of `x cos t + y sin t = f(t)`, counted
/// with multiplicity: `½∫ f (f + f'') dt`.
///
/// `f` returns `(f(t), f''(t))`. A full period `[a, a + 2π]` uses the periodic
/// trapezoid rule with `m` nodes; any other interval uses composite Simpson.
pub fn generalized_area<T: Real, F: Fn(T) -> (T, T)>(f: F, a: T, b: T, m: usize) -> Result<T> {
    if !(b > a) {
        return Err(Error::BadInterval { a: a.to_f64_lossy(), b: b.to_f64_lossy() });
    }
    let integrand = |t: T| {
        let (v, d2) = f(t);
        v * (v + d2)
    };
    let tau = T::two_pi();
    let half = T::lit(0.5);
    if ((b - a) - tau).abs() <= T::epsilon() * T::lit(16.0) * tau {
        let samples: Vec<T> = periodic_nodes::<T>(m).into_iter().map(|t| integrand(a + t)).collect();
        Ok(half * periodic_integral(&samples)?)
    } else {
        Ok(half * simpson(integrand, a, b, m)?)
    }
}

/// [`generalized_area`] of a trigonometric polynomial over one period.
pub fn generalized_area_of<T: Real>(f: &TrigSupport<T>, m: usize) -> Result<T> {
    generalized_area(
        |t| {
            let [v, _, d2, _] = f.eval_jet(t);
            (v, d2)
        },
        T::zero(),
        T::two_pi(),
        m,
    )
}

/// Area `πr² + Lr + F` of the parallel body at signed distance `r`.
pub fn steiner_polynomial<T: Real>(body: &ConvexBody<T>, r: T) -> T {
    let f = functionals_spectral(body);
    T::PI() * r * r + f.length * r + f.area
}

/// Wirtinger deficit `∫(f'² − f²) = −2πa0² + πΣ(n²−1)c_n²`.
pub fn wirtinger_deficit<T: Real>(f: &TrigSupport<T>) -> T {
    let pi = T::PI();
    let one = T::one();
    let a0 = f.a0();
    let sum = compensated_sum(f.harmonics().iter().map(|h| {
        let n = t_u32::<T>(h.n);
        (n * n - one) * h.c_sq()
    }));
    -T::lit(2.0) * pi * a0 * a0 + pi * sum
}

/// Slack in `W_{f'} ≥ 4W_f + (2/π)(∫f)²`; zero exactly when `f` has degree ≤ 2.
pub fn wirtinger_lemma_gap<T: Real>(f: &TrigSupport<T>) -> T {
    let pi = T::PI();
    let mean_integral = T::two_pi() * f.a0();
    wirtinger_deficit(&f.derivative())
        - T::lit(4.0) * wirtinger_deficit(f)
        - T::lit(2.0) / pi * mean_integral * mean_integral
}

/// `|x − y| ≤ rel·max(|x|, |y|)`, with an absolute floor `rel·unit` for
/// quantities that vanish.
pub fn agrees<T: Real>(x: T, y: T, rel: T, unit: T) -> bool {
    (x - y).abs() <= rel * x.abs().max(y.abs()).max(unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_body::Harmonic;
    use std::f64::consts::PI;

    fn body(a0: f64, hs: &[(u32, f64, f64)]) -> ConvexBody<f64> {
        TrigSupport::new(a0, hs.iter().map(|&(n, a, b)| Harmonic::new(n, a, b)).collect())
            .unwrap()
            .validate_default()
            .unwrap()
    }

    fn ast() -> ConvexBody<f64> {
        body(1.0, &[(2, 0.0, 0.2)])
    }

    fn delt() -> ConvexBody<f64> {
        body(1.0, &[(3, 0.1, 0.0)])
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn astroid_spectral_values() {
        let f = functionals_spectral(&ast());
        assert!(close(f.length, 2.0 * PI, 1e-14));
        assert!(close(f.area, 0.94 * PI, 1e-14));
        assert!(close(f.deficit, 0.24 * PI * PI, 1e-14));
        assert!(close(f.evolute_area, -0.24 * PI, 1e-14));
        assert_eq!(f.hurwitz_deficit, 0.0);
        assert!(close(f.pedal_area, 1.02 * PI, 1e-14));
        assert!(close(f.delta2_sq, 0.04 * PI, 1e-15));
        assert_eq!(f.wigner_area, 0.0);
        assert!(close(f.wirtinger_q, 0.12 * PI, 1e-15));
    }

    #[test]
    fn deltoid_spectral_values() {
        let f = functionals_spectral(&delt());
        assert!(close(f.deficit, 0.16 * PI * PI, 1e-14));
        assert!(close(f.evolute_area.abs(), 0.36 * PI, 1e-14));
        assert!(close(f.hurwitz_deficit, 0.2 * PI * PI, 1e-14));
        assert!(close(f.pedal_excess, 0.045 * PI, 1e-15));
        assert!(close(f.delta2_sq, 0.01 * PI, 1e-15));
        assert!(close(f.wigner_area, -0.04 * PI, 1e-15));
    }

    #[test]
    fn circle_spectral_values() {
        let f = functionals_spectral(&TrigSupport::circle(1.0).validate_default().unwrap());
        assert!(close(f.length, 2.0 * PI, 1e-15));
        assert!(close(f.area, PI, 1e-15));
        assert_eq!(f.deficit, 0.0);
        assert_eq!(f.evolute_area, 0.0);
        assert!(close(f.pedal_area, PI, 1e-15));
        assert_eq!(f.delta2_sq, 0.0);
        assert_eq!(f.wigner_area, 0.0);
    }

    #[test]
    fn quadrature_matches_spectral_on_fixtures() {
        for b in [ast(), delt(), body(1.0, &[(1, 0.3, -0.2), (2, 0.05, -0.02), (5, 0.0, 0.01)])] {
            let s = functionals_spectral(&b);
            let q = functionals_quadrature(&b, QuadratureGrid { m: 64 }).unwrap();
            assert_eq!(q.path, Path::Quadrature);
            for ((name, x), (_, y)) in s.scalar_fields().iter().zip(q.scalar_fields().iter()) {
                assert!(agrees(*x, *y, 1e-12, 1.0), "{name}: {x} vs {y}");
            }
            for (n, c) in &s.cn_sq {
                assert!(close(*c, q.c_sq(*n), 1e-14), "c_{n}^2");
            }
        }
    }

    #[test]
    fn circle_quadrature_on_eight_nodes() {
        let c = TrigSupport::circle(1.0).validate_default().unwrap();
        let q = functionals_quadrature(&c, QuadratureGrid { m: 8 }).unwrap();
        assert!(close(q.length, 2.0 * PI, 1e-15));
        assert!(close(q.area, PI, 1e-15));
    }

    #[test]
    fn quadrature_rejects_coarse_grid() {
        let err = functionals_quadrature(&delt(), QuadratureGrid { m: 16 }).unwrap_err();
        assert!(matches!(err, Error::BadConfig(_)));
        assert_eq!(QuadratureGrid::for_degree(3).m, 256);
        assert_eq!(QuadratureGrid::for_degree(100).m, 512);
    }

    #[test]
    fn generalized_area_examples() {
        // evolute support of AST: p'(φ − π/2) = −0.4 cos 2φ
        let evolute = TrigSupport::new(0.0, vec![Harmonic::new(2, -0.4, 0.0)]).unwrap();
        assert!(close(generalized_area_of(&evolute, 64).unwrap(), -0.24 * PI, 1e-14));
        assert!(close(generalized_area_of(&TrigSupport::circle(1.0), 16).unwrap(), PI, 1e-14));
        let steiner = TrigSupport::new(0.0, vec![Harmonic::new(3, 0.0, 0.1)]).unwrap();
        assert!(close(generalized_area_of(&steiner, 64).unwrap(), -0.04 * PI, 1e-15));
        assert!(matches!(
            generalized_area(|t: f64| (t, 0.0), 1.0, 0.5, 16),
            Err(Error::BadInterval { .. })
        ));
    }

    #[test]
    fn generalized_area_on_partial_interval_uses_simpson() {
        // Half of the circle's swept area.
        let v = generalized_area(|_t: f64| (1.0, 0.0), 0.0, PI, 64).unwrap();
        assert!(close(v, PI / 2.0, 1e-14));
        // Astroid with r = 1 as the envelope of 2r·sin 2θ: swept area −6π over
        // a full turn, half of it over [0, π].
        let f = |t: f64| (2.0 * (2.0 * t).sin(), -8.0 * (2.0 * t).sin());
        let full = generalized_area(f, 0.0, 2.0 * PI, 256).unwrap();
        let half = generalized_area(f, 0.0, PI, 512).unwrap();
        assert!(close(full, -6.0 * PI, 1e-12));
        assert!(close(half, -3.0 * PI, 1e-9));
    }

    #[test]
    fn steiner_polynomial_examples() {
        let c = TrigSupport::circle(1.0).validate_default().unwrap();
        assert!(close(steiner_polynomial(&c, -1.0), 0.0, 1e-15));
        let f = functionals_spectral(&ast());
        let inner = steiner_polynomial(&ast(), -1.0);
        assert!(close(inner, -0.06 * PI, 1e-14));
        assert!(close(f.deficit, 4.0 * PI * inner.abs(), 1e-13));
        assert!(close(steiner_polynomial(&ast(), 0.0), f.area, 0.0));
    }

    #[test]
    fn wirtinger_examples() {
        let q = ast().support().offset(-1.0);
        assert!(close(wirtinger_deficit(&q), 0.12 * PI, 1e-15));
        assert!(close(wirtinger_deficit(&q.derivative()), 0.48 * PI, 1e-14));
        assert!(close(wirtinger_lemma_gap(&q), 0.0, 1e-15));

        let q = TrigSupport::new(0.0, vec![Harmonic::new(3, 0.1, 0.0)]).unwrap();
        assert!(close(wirtinger_deficit(&q), 0.08 * PI, 1e-15));
        assert!(close(wirtinger_deficit(&q.derivative()), 0.72 * PI, 1e-14));

        assert!(close(wirtinger_deficit(&TrigSupport::circle(0.7)), -2.0 * PI * 0.49, 1e-15));
    }

    #[test]
    fn json_uses_short_names() {
        let v = serde_json::to_value(functionals_spectral(&ast())).unwrap();
        for key in ["L", "F", "Delta", "Fe", "hurwitz_deficit", "A", "AmF", "delta2_sq", "Aw", "Wq", "path"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["path"], "spectral");
    }

    #[test]
    fn single_precision_route() {
        let b = TrigSupport::<f32>::new(1.0, vec![Harmonic::new(3, 0.1, 0.0)])
            .unwrap()
            .validate_default()
            .unwrap();
        let s = functionals_spectral(&b);
        let q = functionals_quadrature(&b, QuadratureGrid { m: 64 }).unwrap();
        assert!((s.hurwitz_deficit - 0.2 * std::f32::consts::PI.powi(2)).abs() < 1e-5);
        assert!((s.area - q.area).abs() < 1e-5);
    }
}
