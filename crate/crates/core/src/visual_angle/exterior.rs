//! Integrals of visual-angle kernels over the exterior of a body.
//!
//! The primary route parametrizes exterior points by the normals `(φ₁, δ)` of
//! their two support lines. The domain is the finite strip
//! `[0, 2π) × (δ_min, π)` and the integrand `f(π − δ)·t₁t₂/sin δ` stays bounded
//! as `δ → π` because `f = O(ω³)` cancels the cubic growth of the area
//! element. For fixed `δ` the integrand is a trigonometric polynomial in `φ₁`,
//! so the periodic trapezoid rule is exact there; `δ` uses graded
//! Gauss-Legendre panels.
//!
//! The polar-grid route integrates directly in polar coordinates about the
//! Steiner point out to a cutoff radius and extrapolates the `r⁻³` tail. It
//! shares nothing with the primary route except the kernel.

use rayon::prelude::*;
use serde::Serialize;

use super::kernel::Kernel;
use super::tangent::{exterior_point, support_line_angles};
use crate::error::{Error, Result};
use crate::functionals::functionals_spectral;
use crate::quadrature::{compensated_sum, GaussLegendre};
use crate::roots::hybrid_newton;
use crate::scalar::Real;
use crate::spectral_body::ConvexBody;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    TangentCoords,
    PolarGrid,
}

/// Quadrature controls for exterior integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExteriorConfig<T> {
    /// Nodes in the periodic direction (`φ₁`, or `θ` on the polar grid).
    pub nodes_phi: usize,
    /// Gauss-Legendre nodes across all `δ` panels.
    pub nodes_delta: usize,
    /// Excluded collar `δ < delta_min` next to the boundary.
    pub delta_min: T,
    pub method: Method,
    /// Polar-grid cutoff radius, in units of `a0`.
    pub r_max: T,
    /// Gauss-Legendre nodes per radial panel of the polar grid.
    pub radial_nodes: usize,
}

impl<T: Real> Default for ExteriorConfig<T> {
    fn default() -> Self {
        Self {
            nodes_phi: 128,
            nodes_delta: 96,
            delta_min: T::lit(1e-4),
            method: Method::TangentCoords,
            r_max: T::lit(100.0),
            radial_nodes: 16,
        }
    }
}

impl<T: Real> ExteriorConfig<T> {
    pub fn polar_grid() -> Self {
        Self { method: Method::PolarGrid, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_phi < 16 || self.nodes_delta < 16 {
            return Err(Error::BadConfig(format!(
                "exterior node counts must be >= 16 (phi {}, delta {})",
                self.nodes_phi, self.nodes_delta
            )));
        }
        if !(self.delta_min > T::zero() && self.delta_min < T::PI() / T::lit(64.0)) {
            return Err(Error::BadConfig(format!("delta_min {} outside (0, pi/64)", self.delta_min)));
        }
        if self.method == Method::PolarGrid {
            if !(self.r_max >= T::lit(20.0)) {
                return Err(Error::BadConfig(format!("polar cutoff {} must be >= 20 a0", self.r_max)));
            }
            if self.radial_nodes < 4 {
                return Err(Error::BadConfig("radial panels need >= 4 nodes".into()));
            }
        }
        Ok(())
    }
}

/// Value of an exterior integral with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralResult<T> {
    pub value: T,
    pub error_bar: T,
    pub method: Method,
    /// Integrand evaluations behind `value`.
    pub nodes: usize,
}

/// Numeric and closed-form values of a visual moment `I_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentResult<T> {
    pub order: u32,
    pub numeric: IntegralResult<T>,
    pub spectral: T,
}

/// `∫_{P∉K} f(ω(P)) dP` with the method selected in `config`.
pub fn exterior_integral<T: Real>(
    body: &ConvexBody<T>,
    kernel: &Kernel<T>,
    config: &ExteriorConfig<T>,
) -> Result<IntegralResult<T>> {
    match config.method {
        Method::TangentCoords => exterior_integral_tangent(body, kernel, config),
        Method::PolarGrid => exterior_integral_grid(body, kernel, config),
    }
}

/// Breakpoints of the graded `δ` panels, clustered toward `π`.
fn delta_panels<T: Real>(delta_min: T) -> [T; 5] {
    let pi = T::PI();
    [delta_min, pi / T::lit(2.0), pi * T::lit(0.75), pi * T::lit(0.875), pi]
}

/// Tangent-coordinate integral.
pub fn exterior_integral_tangent<T: Real>(
    body: &ConvexBody<T>,
    kernel: &Kernel<T>,
    config: &ExteriorConfig<T>,
) -> Result<IntegralResult<T>> {
    config.validate()?;
    kernel.check_integrable()?;
    let m = config.nodes_phi.max(4 * body.degree() + 8);
    let panels = delta_panels(config.delta_min);
    let per_panel = (config.nodes_delta / (panels.len() - 1)).max(4);
    let fine = GaussLegendre::<T>::new(per_panel);
    let coarse = GaussLegendre::<T>::new(per_panel / 2);
    let h = T::two_pi() / T::from_usize_lossy(m);

    let rows: Vec<Result<[T; 4]>> = (0..m)
        .into_par_iter()
        .map(|j| {
            let phi1 = h * T::from_usize_lossy(j);
            let integrand = |delta: T| -> Result<T> {
                let e = exterior_point(body, phi1, delta)?;
                Ok(kernel.eval(e.omega) * e.jac)
            };
            let mut acc_fine = Vec::with_capacity(per_panel * 4);
            let mut acc_coarse = Vec::with_capacity(per_panel * 2);
            for w in panels.windows(2) {
                for (x, wt) in fine.mapped(w[0], w[1]) {
                    acc_fine.push(wt * integrand(x)?);
                }
                for (x, wt) in coarse.mapped(w[0], w[1]) {
                    acc_coarse.push(wt * integrand(x)?);
                }
            }
            let magnitude = compensated_sum(acc_fine.iter().map(|v| v.abs()));
            let edge = integrand(config.delta_min)?;
            Ok([compensated_sum(acc_fine), compensated_sum(acc_coarse), magnitude, edge])
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;

    let value = h * compensated_sum(rows.iter().map(|r| r[0]));
    let value_coarse = h * compensated_sum(rows.iter().map(|r| r[1]));
    let magnitude = h * compensated_sum(rows.iter().map(|r| r[2]));
    // The integrand vanishes linearly at δ = 0, so the excluded collar holds
    // about half of δ_min times its edge value; the bar takes twice that.
    let collar = (h * compensated_sum(rows.iter().map(|r| r[3]))).abs() * config.delta_min;
    let roundoff = T::lit(1e3) * T::epsilon() * magnitude;
    let error_bar = (value - value_coarse).abs() + collar + roundoff;
    Ok(IntegralResult {
        value,
        error_bar,
        method: Method::TangentCoords,
        nodes: m * per_panel * (panels.len() - 1),
    })
}

/// Boundary distance from the origin along direction `theta`, for a body
/// whose origin is interior.
fn radial_function<T: Real>(body: &ConvexBody<T>, theta: T) -> T {
    let (us, uc) = theta.sin_cos();
    // cross(u, γ(φ)) increases on (θ − π/2, θ + π/2) and vanishes where γ
    // crosses the ray.
    let cross = |phi: T| -> (T, T) {
        let g = body.envelope_point(phi);
        let rho = body.radius_of_curvature(phi);
        (uc * g[1] - us * g[0], rho * (phi - theta).cos())
    };
    let half = T::FRAC_PI_2();
    let phi = hybrid_newton(cross, theta - half, theta + half, T::zero(), T::epsilon() * T::lit(4.0));
    let g = body.envelope_point(phi);
    (g[0] * g[0] + g[1] * g[1]).sqrt()
}

/// Direct polar-grid integral about the Steiner point with tail extrapolation.
pub fn exterior_integral_grid<T: Real>(
    body: &ConvexBody<T>,
    kernel: &Kernel<T>,
    config: &ExteriorConfig<T>,
) -> Result<IntegralResult<T>> {
    let config = ExteriorConfig { method: Method::PolarGrid, ..*config };
    config.validate()?;
    kernel.check_integrable()?;
    let centered = body.steiner_centered();
    let m = config.nodes_phi.max(4 * body.degree() + 8);
    let m = m + m % 2;
    let r_max = config.r_max * centered.a0();
    let fine = GaussLegendre::<T>::new(config.radial_nodes);
    let coarse = GaussLegendre::<T>::new((config.radial_nodes / 2).max(2));
    let h = T::two_pi() / T::from_usize_lossy(m);
    let f_at = |theta: T, r: T| -> Result<T> {
        let (s, c) = theta.sin_cos();
        let t = support_line_angles(&centered, [r * c, r * s], T::zero())?;
        Ok(kernel.eval(t.omega))
    };

    // ∫_{r_b}^{R} f r dr along one ray. The first panel [r_b, 2r_b] uses
    // r = r_b + σ² to absorb the square-root behaviour at the boundary.
    let ray = |theta: T, rule: &GaussLegendre<T>| -> Result<(T, usize)> {
        let rb = radial_function(&centered, theta);
        let mut terms = Vec::new();
        let two = T::lit(2.0);
        for (sigma, w) in rule.mapped(T::zero(), rb.sqrt()) {
            let r = rb + sigma * sigma;
            terms.push(w * two * sigma * r * f_at(theta, r)?);
        }
        let mut lo = two * rb;
        while lo < r_max {
            let hi = (lo * two).min(r_max);
            for (r, w) in rule.mapped(lo, hi) {
                terms.push(w * r * f_at(theta, r)?);
            }
            lo = hi;
        }
        let n = terms.len();
        Ok((compensated_sum(terms), n))
    };

    let rows: Vec<Result<(T, T, usize)>> = (0..m)
        .into_par_iter()
        .map(|j| {
            let theta = h * T::from_usize_lossy(j);
            let (v, n) = ray(theta, &fine)?;
            // Coarse estimate: half the radial nodes on every other ray.
            let vc = if j % 2 == 0 { ray(theta, &coarse)?.0 } else { T::zero() };
            Ok((v, vc, n))
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let body_part = h * compensated_sum(rows.iter().map(|r| r.0));
    let body_coarse = h * T::lit(2.0) * compensated_sum(rows.iter().map(|r| r.1));
    let mut nodes: usize = rows.iter().map(|r| r.2).sum();

    // Tail beyond R: with t = R/r on the last decade, fit
    // r³·H(r) = Σ d_j t^j, where H is the angular integral of f at radius r;
    // then ∫_R^∞ H r dr = Σ d_j / ((j + 1) R).
    const TAIL_RADII: usize = 12;
    let mut ts = Vec::with_capacity(TAIL_RADII);
    let mut ys = Vec::with_capacity(TAIL_RADII);
    for i in 0..TAIL_RADII {
        let frac = T::from_usize_lossy(i) / T::from_usize_lossy(TAIL_RADII - 1);
        let t = T::lit(10.0).powf(frac);
        let r = r_max / t;
        let samples: Result<Vec<T>> = (0..m)
            .into_par_iter()
            .map(|j| f_at(h * T::from_usize_lossy(j), r))
            .collect();
        let angular = h * compensated_sum(samples?);
        nodes += m;
        ts.push(t);
        ys.push(angular * r * r * r);
    }
    let tail_of = |d: &[T]| compensated_sum(d.iter().enumerate().map(|(j, &c)| c / T::from_usize_lossy(j + 1))) / r_max;
    let (d, worst) = poly_fit::<T, TAIL_DEGREE>(&ts, &ys);
    let (d_low, _) = poly_fit::<T, { TAIL_DEGREE - 1 }>(&ts, &ys);
    let tail = tail_of(&d);
    // Dropping the top term and refitting bounds the truncation of the series.
    let tail_uncertainty = T::lit(2.0) * (tail - tail_of(&d_low)).abs() + worst / r_max;

    let value = body_part + tail;
    let roundoff = T::lit(1e3) * T::epsilon() * value.abs();
    let error_bar = (body_part - body_coarse).abs() + tail_uncertainty + roundoff;
    Ok(IntegralResult { value, error_bar, method: Method::PolarGrid, nodes })
}

const TAIL_DEGREE: usize = 4;

/// Least-squares polynomial `y ≈ Σ_{j<D} d_j t^j` by modified Gram-Schmidt;
/// also returns the largest residual.
fn poly_fit<T: Real, const D: usize>(t: &[T], y: &[T]) -> ([T; D], T) {
    let rows = t.len();
    let mut q: Vec<Vec<T>> = (0..D).map(|j| t.iter().map(|&v| v.powi(j as i32)).collect()).collect();
    let mut r = [[T::zero(); D]; D];
    for j in 0..D {
        for i in 0..j {
            let dot = compensated_sum((0..rows).map(|k| q[i][k] * q[j][k]));
            r[i][j] = dot;
            for k in 0..rows {
                q[j][k] = q[j][k] - dot * q[i][k];
            }
        }
        let norm = compensated_sum(q[j].iter().map(|&v| v * v)).sqrt();
        r[j][j] = norm;
        for v in q[j].iter_mut() {
            *v = *v / norm;
        }
    }
    let qty: Vec<T> = (0..D).map(|j| compensated_sum((0..rows).map(|k| q[j][k] * y[k]))).collect();
    let mut d = [T::zero(); D];
    for j in (0..D).rev() {
        let mut acc = qty[j];
        for i in j + 1..D {
            acc = acc - r[j][i] * d[i];
        }
        d[j] = acc / r[j][j];
    }
    let worst = t.iter().zip(y).fold(T::zero(), |acc, (&tv, &yv)| {
        let fit = d.iter().rev().fold(T::zero(), |s, &c| s * tv + c);
        acc.max((yv - fit).abs())
    });
    (d, worst)
}

/// Visual moment `I_n` by quadrature next to its closed form
/// `L² + (−1)ⁿ π² (n² − 1) c_n²`.
pub fn visual_moment<T: Real>(body: &ConvexBody<T>, n: u32, config: &ExteriorConfig<T>) -> Result<MomentResult<T>> {
    let kernel = Kernel::moment(n)?;
    let numeric = exterior_integral(body, &kernel, config)?;
    let spectral = kernel
        .spectral_integral(&functionals_spectral(body))
        .expect("moment kernels have closed forms");
    Ok(MomentResult { order: n, numeric, spectral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_body::{Harmonic, TrigSupport};
    use std::f64::consts::PI;

    fn unit_circle() -> ConvexBody<f64> {
        TrigSupport::circle(1.0).validate_default().unwrap()
    }

    fn body(a0: f64, hs: &[(u32, f64, f64)]) -> ConvexBody<f64> {
        TrigSupport::new(a0, hs.iter().map(|&(n, a, b)| Harmonic::new(n, a, b)).collect())
            .unwrap()
            .validate_default()
            .unwrap()
    }

    #[test]
    fn crofton_on_unit_circle() {
        let r = exterior_integral(&unit_circle(), &Kernel::crofton(), &ExteriorConfig::default()).unwrap();
        assert!((r.value - PI * PI).abs() < 1e-6 * PI * PI, "{r:?}");
        assert!(r.error_bar < 1e-4);
    }

    #[test]
    fn radial_function_of_circle_and_offset_body() {
        let c = unit_circle();
        for th in [0.0, 1.0, 2.5, 5.9] {
            assert!((radial_function(&c, th) - 1.0).abs() < 1e-14);
        }
        let b = body(1.0, &[(2, 0.0, 0.2)]);
        for th in [0.1, 1.3, 3.0] {
            let r = radial_function(&b, th);
            let (s, c) = th.sin_cos();
            // The point on the ray is on the boundary: max clearance zero.
            let gmax = (0..20000)
                .map(|j| {
                    let phi = j as f64 * 2.0 * PI / 20000.0;
                    r * (c * phi.cos() + s * phi.sin()) - b.eval(phi, 0)
                })
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(gmax.abs() < 1e-6, "theta {th}: {gmax}");
        }
    }

    #[test]
    fn annulus_area_from_jacobian() {
        // f ≡ 1 on δ ∈ (δ_min, δ_max) covers the annulus 1 < |P| < sec(δ_max/2)
        // around the unit circle.
        let c = unit_circle();
        let (lo, hi) = (1e-3, 2.0);
        let gl = GaussLegendre::<f64>::new(40);
        let per_phi = gl.integrate(lo, hi, |d| exterior_point(&c, 0.3, d).unwrap().jac);
        let numeric = 2.0 * PI * per_phi;
        let outer = 1.0 / (hi / 2.0).cos();
        let inner = 1.0 / (lo / 2.0).cos();
        let exact = PI * (outer * outer - inner * inner);
        assert!((numeric - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn integrand_bounded_toward_infinity() {
        let b = body(1.0, &[(3, 0.1, 0.0)]);
        let k = Kernel::crofton();
        let vals: Vec<f64> = (1..=8)
            .map(|i| {
                let e = exterior_point(&b, 0.4, PI - 10f64.powi(-i)).unwrap();
                k.eval(e.omega) * e.jac
            })
            .collect();
        let last = *vals.last().unwrap();
        assert!(vals.iter().all(|v| v.is_finite() && *v > 0.0));
        assert!((vals[6] - last).abs() < 1e-6 * last);
    }

    #[test]
    fn poly_fit_recovers_cubic() {
        let t: Vec<f64> = (0..12).map(|i| 1.0 + 0.8 * i as f64).collect();
        let y: Vec<f64> = t.iter().map(|v| 2.0 - v + 0.5 * v * v - 0.01 * v * v * v).collect();
        let (d, worst) = poly_fit::<f64, 4>(&t, &y);
        for (got, want) in d.iter().zip([2.0, -1.0, 0.5, -0.01]) {
            assert!((got - want).abs() < 1e-10);
        }
        assert!(worst < 1e-10);
    }

    #[test]
    fn polar_grid_crofton_on_unit_circle() {
        let r = exterior_integral_grid(&unit_circle(), &Kernel::crofton(), &ExteriorConfig::polar_grid()).unwrap();
        assert!((r.value - PI * PI).abs() < 0.01 * PI * PI, "{r:?}");
        assert!((r.value - PI * PI).abs() <= r.error_bar, "{r:?}");
    }

    #[test]
    fn moment_on_circle_is_length_squared() {
        for n in [2, 3, 5] {
            let m = visual_moment(&unit_circle(), n, &ExteriorConfig::default()).unwrap();
            assert!((m.spectral - 4.0 * PI * PI).abs() < 1e-12);
            assert!((m.numeric.value - m.spectral).abs() < 1e-6 * m.spectral);
        }
        assert!(matches!(visual_moment(&unit_circle(), 1, &ExteriorConfig::default()), Err(Error::BadOrder { .. })));
    }

    #[test]
    fn rejects_bad_config_and_kernel() {
        let c = unit_circle();
        let k = Kernel::crofton();
        let bad = ExteriorConfig { nodes_phi: 8, ..ExteriorConfig::default() };
        assert!(matches!(exterior_integral(&c, &k, &bad), Err(Error::BadConfig(_))));
        let bad = ExteriorConfig { delta_min: 0.1, ..ExteriorConfig::default() };
        assert!(exterior_integral(&c, &k, &bad).is_err());
        let bad = ExteriorConfig { r_max: 5.0, ..ExteriorConfig::polar_grid() };
        assert!(exterior_integral(&c, &k, &bad).is_err());
        let lin = Kernel::custom("sin", 0.0, &[(1, 1.0)]);
        assert!(matches!(
            exterior_integral(&c, &lin, &ExteriorConfig::default()),
            Err(Error::NonIntegrableKernel { .. })
        ));
    }
}
