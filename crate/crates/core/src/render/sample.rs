use serde::Serialize;

use super::Polyline;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral_body::{ConvexBody, HypocycloidSpec, TrigSupport};

/// Curves attached to a body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind<T> {
    Boundary,
    /// Locus of the centres of curvature, `γ − ρN`.
    Evolute,
    /// Polar graph `r = p(φ)` about the Steiner point.
    Pedal,
    /// Envelope of the lines at signed distance `r` outside the support
    /// lines. Inner parallels past the minimal radius of curvature
    /// self-intersect and develop cusps.
    Parallel(T),
    /// Midpoints of the chords joining points with opposite normals.
    Wigner,
}

const MIN_SAMPLES: usize = 64;

/// `M` samples at `φ = 2πj/M`, closed.
pub fn sample_curve<T: Real>(body: &ConvexBody<T>, kind: CurveKind<T>, m: usize) -> Result<Polyline<T>> {
    if m < MIN_SAMPLES {
        return Err(Error::BadConfig(format!("curve sampling needs >= {MIN_SAMPLES} points, got {m}")));
    }
    let support: &TrigSupport<T> = body;
    let h = T::two_pi() / T::from_usize_lossy(m);
    let phis = (0..m).map(|j| h * T::from_usize_lossy(j));
    let vertices: Vec<[T; 2]> = match kind {
        CurveKind::Boundary => phis.map(|phi| support.envelope_point(phi)).collect(),
        CurveKind::Evolute => phis
            .map(|phi| {
                let g = support.envelope_point(phi);
                let rho = support.radius_of_curvature(phi);
                let (s, c) = phi.sin_cos();
                [g[0] - rho * c, g[1] - rho * s]
            })
            .collect(),
        CurveKind::Pedal => {
            let s = support.steiner_point();
            let centered = support.recentered();
            phis.map(|phi| {
                let r = centered.eval(phi, 0);
                let (sn, cs) = phi.sin_cos();
                [s[0] + r * cs, s[1] + r * sn]
            })
            .collect()
        }
        CurveKind::Parallel(r) => phis
            .map(|phi| {
                let g = support.envelope_point(phi);
                let (s, c) = phi.sin_cos();
                [g[0] + r * c, g[1] + r * s]
            })
            .collect(),
        CurveKind::Wigner => {
            let odd = support.odd_part();
            phis.map(|phi| odd.envelope_point(phi)).collect()
        }
    };
    Polyline::closed(vertices)
}

/// Hypocycloid traced over `t ∈ [0, 2nπ)` with `M` samples.
pub fn sample_hypocycloid<T: Real>(spec: &HypocycloidSpec<T>, m: usize) -> Result<Polyline<T>> {
    if m < MIN_SAMPLES {
        return Err(Error::BadConfig(format!("curve sampling needs >= {MIN_SAMPLES} points, got {m}")));
    }
    let h = spec.period() / T::from_usize_lossy(m);
    Polyline::closed((0..m).map(|j| spec.point(h * T::from_usize_lossy(j))).collect())
}

#[cfg(test)]
mod tests {
    use super::super::{count_cusps, shoelace_area};
    use super::*;
    use crate::functionals::functionals_spectral;
    use crate::spectral_body::Harmonic;
    use std::f64::consts::PI;

    fn body(hs: &[(u32, f64, f64)]) -> ConvexBody<f64> {
        TrigSupport::new(1.0, hs.iter().map(|&(n, a, b)| Harmonic::new(n, a, b)).collect())
            .unwrap()
            .validate_default()
            .unwrap()
    }

    #[test]
    fn circle_evolute_is_its_centre() {
        let c = TrigSupport::circle(1.0).validate_default().unwrap();
        let e = sample_curve(&c, CurveKind::Evolute, 256).unwrap();
        assert!(e.max_distance_from([0.0, 0.0]) < 1e-12);
    }

    #[test]
    fn boundary_and_pedal_areas() {
        let ast = body(&[(2, 0.0, 0.2)]);
        let a = shoelace_area(&sample_curve(&ast, CurveKind::Boundary, 512).unwrap()).unwrap();
        assert!((a - 0.94 * PI).abs() < 1e-4);
        let delt = body(&[(3, 0.1, 0.0)]);
        let a = shoelace_area(&sample_curve(&delt, CurveKind::Pedal, 512).unwrap()).unwrap();
        assert!((a - 1.005 * PI).abs() < 1e-4);
    }

    #[test]
    fn pedal_is_about_the_steiner_point() {
        let b = body(&[(1, 0.5, -0.3), (3, 0.1, 0.0)]);
        let moved = body(&[(3, 0.1, 0.0)]);
        let p = sample_curve(&b, CurveKind::Pedal, 128).unwrap();
        let q = sample_curve(&moved, CurveKind::Pedal, 128).unwrap().translated([0.5, -0.3]);
        for (u, v) in p.vertices.iter().zip(&q.vertices) {
            assert!((u[0] - v[0]).abs() < 1e-14 && (u[1] - v[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn wigner_equals_inner_parallel_for_constant_width() {
        let cw = body(&[(1, 0.2, 0.1), (3, 0.05, 0.0), (5, 0.0, 0.01)]);
        let shift = -functionals_spectral(&cw).length / (2.0 * PI);
        let w = sample_curve(&cw, CurveKind::Wigner, 256).unwrap();
        let p = sample_curve(&cw, CurveKind::Parallel(shift), 256).unwrap();
        for (u, v) in w.vertices.iter().zip(&p.vertices) {
            assert!((u[0] - v[0]).abs() < 1e-10 && (u[1] - v[1]).abs() < 1e-10);
        }
    }

    #[test]
    fn astroid_evolute_area_counts_multiplicity() {
        // The evolute of a curve parallel to an astroid is an astroid traced
        // once; its swept area is Fe.
        let ast = body(&[(2, 0.0, 0.2)]);
        let a = shoelace_area(&sample_curve(&ast, CurveKind::Evolute, 4096).unwrap()).unwrap();
        let fe = functionals_spectral(&ast).evolute_area;
        assert!((a.abs() - fe.abs()).abs() < 1e-5, "{a} {fe}");
    }

    #[test]
    fn hypocycloid_areas_and_cusps() {
        let astroid = HypocycloidSpec::<f64>::new(4, 1, 1.0).unwrap();
        let p = sample_hypocycloid(&astroid, 2048).unwrap();
        assert!((shoelace_area(&p).unwrap().abs() - 6.0 * PI).abs() < 1e-3);
        assert_eq!(count_cusps(&p), 4);
        let deltoid = HypocycloidSpec::<f64>::new(3, 1, 1.0).unwrap();
        let p = sample_hypocycloid(&deltoid, 2048).unwrap();
        assert!((shoelace_area(&p).unwrap().abs() - 2.0 * PI).abs() < 1e-3);
        assert_eq!(count_cusps(&p), 3);
        let star = HypocycloidSpec::<f64>::new(5, 2, 1.0).unwrap();
        let p = sample_hypocycloid(&star, 2048).unwrap();
        assert_eq!(count_cusps(&p), 5);
        let end = star.point(star.period());
        let start = star.point(0.0);
        assert!((end[0] - start[0]).abs() < 1e-12 && (end[1] - start[1]).abs() < 1e-12);
    }

    #[test]
    fn too_few_samples() {
        let c = TrigSupport::circle(1.0).validate_default().unwrap();
        assert!(matches!(sample_curve(&c, CurveKind::Boundary, 10), Err(Error::BadConfig(_))));
    }
}
