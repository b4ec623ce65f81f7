//! Tangent lines from exterior points, and the inverse map from a pair of
//! support-line normals back to the point where the lines meet.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::hybrid_newton;
use crate::scalar::Real;
use crate::spectral_body::{wrap_angle, ConvexBody};

/// The two support lines through an exterior point.
///
/// `phi2 = phi1 + delta (mod 2π)` with `0 < delta < π`, and `omega = π − delta`
/// is the visual angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentPair<T> {
    pub point: [T; 2],
    pub phi1: T,
    pub phi2: T,
    pub delta: T,
    pub omega: T,
    /// Distances from the point to the two tangency points.
    pub t1: T,
    pub t2: T,
}

/// Exterior point in tangent coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExteriorPoint<T> {
    pub point: [T; 2],
    /// Area element: `dP = jac · dφ₁ dδ`.
    pub jac: T,
    pub omega: T,
    pub t1: T,
    pub t2: T,
}

const MAX_RESAMPLINGS: u32 = 6;

/// Clearance `⟨P, N(φ)⟩ − p(φ)` and its derivative.
fn clearance<T: Real>(body: &ConvexBody<T>, p: [T; 2], phi: T) -> (T, T) {
    let [h, d1, _, _] = body.eval_jet(phi);
    let (s, c) = phi.sin_cos();
    (p[0] * c + p[1] * s - h, -p[0] * s + p[1] * c - d1)
}

fn clearance_slope<T: Real>(body: &ConvexBody<T>, p: [T; 2], phi: T) -> (T, T) {
    let [_, d1, d2, _] = body.eval_jet(phi);
    let (s, c) = phi.sin_cos();
    (-p[0] * s + p[1] * c - d1, -p[0] * c - p[1] * s - d2)
}

/// Visual angle and tangency data for an exterior point.
///
/// `collar` is relative to `a0`: points whose maximal clearance is positive but
/// at most `collar·a0` are rejected as too close to the boundary.
pub fn support_line_angles<T: Real>(body: &ConvexBody<T>, p: [T; 2], collar: T) -> Result<TangentPair<T>> {
    let a0 = body.a0();
    let radius = (p[0] * p[0] + p[1] * p[1]).sqrt();
    let ftol = T::lit(8.0) * T::epsilon() * (radius + a0);
    let xtol = T::epsilon() * T::lit(4.0);
    let mut samples = 64.max(8 * body.degree());

    for _ in 0..=MAX_RESAMPLINGS {
        let h = T::two_pi() / T::from_usize_lossy(samples);
        let phis: Vec<T> = (0..samples).map(|j| h * T::from_usize_lossy(j)).collect();
        let g: Vec<T> = phis.iter().map(|&phi| clearance(body, p, phi).0).collect();

        // Maximal clearance, polished on g' = 0.
        let (jmax, _) = g
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |acc, (j, &v)| if v > acc.1 { (j, v) } else { acc });
        let (lo, hi) = (phis[jmax] - h, phis[jmax] + h);
        let mut gmax = g[jmax];
        let mut xmax = phis[jmax];
        if clearance_slope(body, p, lo).0 > T::zero() && clearance_slope(body, p, hi).0 < T::zero() {
            let x = hybrid_newton(|phi| clearance_slope(body, p, phi), lo, hi, T::zero(), xtol);
            let gx = clearance(body, p, x).0;
            if gx > gmax {
                gmax = gx;
                xmax = x;
            }
        }
        if gmax <= T::zero() {
            return Err(Error::InteriorPoint { x: p[0].to_f64_lossy(), y: p[1].to_f64_lossy() });
        }
        if gmax <= collar * a0 {
            return Err(Error::BoundaryCollar {
                x: p[0].to_f64_lossy(),
                y: p[1].to_f64_lossy(),
                clearance: gmax.to_f64_lossy(),
            });
        }

        let mut rising = Vec::new();
        let mut falling = Vec::new();
        for j in 0..samples {
            let k = (j + 1) % samples;
            let (ga, gb) = (g[j], g[k]);
            let hi_phi = phis[j] + h;
            if ga < T::zero() && gb >= T::zero() {
                rising.push(hybrid_newton(|phi| clearance(body, p, phi), phis[j], hi_phi, ftol, xtol));
            } else if ga >= T::zero() && gb < T::zero() {
                falling.push(hybrid_newton(|phi| clearance(body, p, phi), phis[j], hi_phi, ftol, xtol));
            }
        }
        if rising.is_empty() && falling.is_empty() {
            // The positive arc is narrower than the sample spacing; walk out
            // from the maximum until the clearance turns negative.
            rising.push(root_beside(body, p, xmax, -T::one(), ftol, xtol));
            falling.push(root_beside(body, p, xmax, T::one(), ftol, xtol));
        }
        if rising.len() == 1 && falling.len() == 1 {
            let phi1 = wrap_angle(rising[0]);
            let phi2 = wrap_angle(falling[0]);
            let delta = wrap_angle(phi2 - phi1);
            let t1 = tangent_length(body, p, phi1);
            let t2 = tangent_length(body, p, phi2);
            return Ok(TangentPair { point: p, phi1, phi2, delta, omega: T::PI() - delta, t1, t2 });
        }
        if samples >= 64 << MAX_RESAMPLINGS {
            return Err(Error::RootCountAnomaly { found: rising.len() + falling.len() });
        }
        samples *= 2;
    }
    Err(Error::RootCountAnomaly { found: 0 })
}

/// Zero of the clearance next to `from`, searching in direction `dir`.
fn root_beside<T: Real>(body: &ConvexBody<T>, p: [T; 2], from: T, dir: T, ftol: T, xtol: T) -> T {
    let mut step = T::lit(1e-6);
    let mut near = from;
    let mut far = from + dir * step;
    while clearance(body, p, far).0 > T::zero() && step < T::PI() {
        near = far;
        step = step * T::lit(2.0);
        far = from + dir * step;
    }
    let (lo, hi) = if dir > T::zero() { (near, far) } else { (far, near) };
    hybrid_newton(|phi| clearance(body, p, phi), lo, hi, ftol, xtol)
}

fn tangent_length<T: Real>(body: &ConvexBody<T>, p: [T; 2], phi: T) -> T {
    let g = body.envelope_point(phi);
    ((p[0] - g[0]).powi(2) + (p[1] - g[1]).powi(2)).sqrt()
}

/// Intersection of the support lines with normals `φ₁` and `φ₁ + δ`, with the
/// tangent-coordinate area element `t₁t₂ / sin ω`.
pub fn exterior_point<T: Real>(body: &ConvexBody<T>, phi1: T, delta: T) -> Result<ExteriorPoint<T>> {
    if !(delta > T::zero() && delta < T::PI()) {
        return Err(Error::DegenerateGap { delta: delta.to_f64_lossy() });
    }
    let phi2 = phi1 + delta;
    let [p1, d1, _, _] = body.eval_jet(phi1);
    let [p2, d2, _, _] = body.eval_jet(phi2);
    let (s1, c1) = phi1.sin_cos();
    let (s2, c2) = phi2.sin_cos();
    let sd = delta.sin();
    let x = (p1 * s2 - p2 * s1) / sd;
    let y = (p2 * c1 - p1 * c2) / sd;
    // Signed offsets along each support line from its tangency point.
    let off1 = -x * s1 + y * c1 - d1;
    let off2 = -x * s2 + y * c2 - d2;
    let (t1, t2) = (off1.abs(), off2.abs());
    Ok(ExteriorPoint { point: [x, y], jac: t1 * t2 / sd, omega: T::PI() - delta, t1, t2 })
}
