use thiserror::Error;

/// Every failure the library can report.
///
/// Numeric payloads are widened to `f64` so the error type does not depend on
/// the scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NotStrictlyConvex: minimum radius of curvature {rho_min:e} at phi = {phi_at:.6}")]
    NotStrictlyConvex { rho_min: f64, phi_at: f64 },
    #[error("NonpositiveMean: mean term a0 = {a0:e} must be positive")]
    NonpositiveMean { a0: f64 },
    #[error("DuplicateFrequency: harmonic n = {n} appears more than once")]
    DuplicateFrequency { n: u32 },
    #[error("ZeroFrequency: harmonics must have n >= 1")]
    ZeroFrequency,
    #[error("NonFinite: coefficient is not a finite number")]
    NonFinite,
    #[error("GridNotUniform: sample {index} at phi = {phi} deviates from the uniform grid")]
    GridNotUniform { index: usize, phi: f64 },
    #[error("InsufficientSamples: {samples} samples cannot resolve degree {degree} (need >= {needed})")]
    InsufficientSamples { samples: usize, degree: usize, needed: usize },
    #[error("AmplitudeTooLarge: amplitude {amp} violates the convexity bound {bound}")]
    AmplitudeTooLarge { amp: f64, bound: f64 },
    #[error("RandomBodyRejected: no convex draw after {halvings} amplitude halvings")]
    RandomBodyRejected { halvings: u32 },
    #[error("EmptyGrid: quadrature needs at least {min} nodes, got {got}")]
    EmptyGrid { got: usize, min: usize },
    #[error("BadInterval: [{a}, {b}] is empty")]
    BadInterval { a: f64, b: f64 },
    #[error("InteriorPoint: ({x}, {y}) lies inside the body")]
    InteriorPoint { x: f64, y: f64 },
    #[error("BoundaryCollar: ({x}, {y}) lies within the boundary collar (clearance {clearance:e})")]
    BoundaryCollar { x: f64, y: f64, clearance: f64 },
    #[error("RootCountAnomaly: found {found} support-line crossings, expected 2")]
    RootCountAnomaly { found: usize },
    #[error("DegenerateGap: normal-angle gap {delta} outside (0, pi)")]
    DegenerateGap { delta: f64 },
    #[error("NonIntegrableKernel: kernel {name} is not O(omega^3) at 0 (linear coefficient {linear:e})")]
    NonIntegrableKernel { name: String, linear: f64 },
    #[error("BadOrder: visual moment order must be >= 2, got {n}")]
    BadOrder { n: u32 },
    #[error("BadConfig: {0}")]
    BadConfig(String),
    #[error("OpenPolyline: shoelace area needs a closed polyline with >= 3 vertices")]
    OpenPolyline,
    #[error("EmptyScene: nothing to draw")]
    EmptyScene,
    #[error("BadSpec: {0}")]
    BadSpec(String),
    #[error("Json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
