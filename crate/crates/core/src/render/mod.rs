//! Polylines of the curves attached to a body, a polygon-area oracle and SVG
//! output.

mod sample;
mod svg;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::CompensatedSum;
use crate::scalar::Real;

pub use sample::{sample_curve, sample_hypocycloid, CurveKind};
pub use svg::{figure_curves, figure_hypocycloids, figure_parallels, write_svg, Layer, Scene, Style};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polyline<T> {
    pub closed: bool,
    pub vertices: Vec<[T; 2]>,
}

impl<T: Real> Polyline<T> {
    pub fn closed(vertices: Vec<[T; 2]>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::BadConfig(format!("closed polyline needs >= 3 vertices, got {}", vertices.len())));
        }
        Self::checked(true, vertices)
    }

    pub fn open(vertices: Vec<[T; 2]>) -> Result<Self> {
        Self::checked(false, vertices)
    }

    fn checked(closed: bool, vertices: Vec<[T; 2]>) -> Result<Self> {
        if vertices.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { closed, vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `[xmin, ymin, xmax, ymax]`, or `None` when empty.
    pub fn bounds(&self) -> Option<[T; 4]> {
        let first = self.vertices.first()?;
        Some(self.vertices.iter().fold([first[0], first[1], first[0], first[1]], |b, v| {
            [b[0].min(v[0]), b[1].min(v[1]), b[2].max(v[0]), b[3].max(v[1])]
        }))
    }

    pub fn to_f64(&self) -> Polyline<f64> {
        Polyline {
            closed: self.closed,
            vertices: self.vertices.iter().map(|v| [v[0].to_f64_lossy(), v[1].to_f64_lossy()]).collect(),
        }
    }

    pub fn translated(&self, d: [T; 2]) -> Self {
        Self { closed: self.closed, vertices: self.vertices.iter().map(|v| [v[0] + d[0], v[1] + d[1]]).collect() }
    }

    /// Largest distance of a vertex from `center`.
    pub fn max_distance_from(&self, center: [T; 2]) -> T {
        self.vertices
            .iter()
            .fold(T::zero(), |acc, v| acc.max((v[0] - center[0]).hypot(v[1] - center[1])))
    }
}

/// Signed polygon area, positive for counterclockwise vertices.
pub fn shoelace_area<T: Real>(poly: &Polyline<T>) -> Result<T> {
    if !poly.closed || poly.vertices.len() < 3 {
        return Err(Error::OpenPolyline);
    }
    let v = &poly.vertices;
    // Relative to the first vertex to keep the cross products small.
    let o = v[0];
    let mut acc = CompensatedSum::new();
    for w in v.windows(2) {
        let (a, b) = ([w[0][0] - o[0], w[0][1] - o[1]], [w[1][0] - o[0], w[1][1] - o[1]]);
        acc.add(a[0] * b[1] - b[0] * a[1]);
    }
    Ok(acc.total() / T::lit(2.0))
}

/// Number of cusps of a closed polyline: maximal runs of vertices where the
/// tangent turns by more than a right angle.
pub fn count_cusps<T: Real>(poly: &Polyline<T>) -> usize {
    let v = &poly.vertices;
    let n = v.len();
    if n < 3 {
        return 0;
    }
    let sharp: Vec<bool> = (0..n)
        .map(|i| {
            let (p, c, q) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            let d1 = [c[0] - p[0], c[1] - p[1]];
            let d2 = [q[0] - c[0], q[1] - c[1]];
            // Turning angle above π/2 ⟺ the steps point backwards.
            d1[0] * d2[0] + d1[1] * d2[1] < T::zero()
        })
        .collect();
    let starts = (0..n).filter(|&i| sharp[i] && !sharp[(i + n - 1) % n]).count();
    if starts == 0 && sharp.iter().all(|&s| s) {
        1
    } else {
        starts
    }
}
