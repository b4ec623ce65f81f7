//! Numerical laboratory for Hurwitz-type reverse isoperimetric inequalities
//! on planar convex bodies.
//!
//! Bodies are truncated trigonometric support functions ([`TrigSupport`]).
//! Every functional is computed twice, once from closed-form sums over the
//! Fourier coefficients and once by periodic quadrature, and the exterior
//! visual-angle integrals are evaluated in tangent coordinates with a polar
//! grid as an independent check. [`verdicts`] combines both into per-theorem
//! reports.
//!
//! All math is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! the scalar to `f64`, which is what the CLI and the acceptance suite use.

pub mod construct;
pub mod error;
pub mod functionals;
pub mod quadrature;
pub mod render;
pub mod roots;
pub mod scalar;
pub mod spectral_body;
pub mod verdicts;
pub mod visual_angle;

pub use construct::{random_body, sweep_spec, BodySpec};
pub use error::{Error, Result};
pub use scalar::Real;
pub use spectral_body::{ConvexBody, Harmonic, HypocycloidSpec, TrigSupport};

/// Support function with `f64` coefficients.
pub type Support = TrigSupport<f64>;
/// Validated convex body with `f64` coefficients.
pub type Body = ConvexBody<f64>;
/// Validated convex body with `f32` coefficients.
pub type Body32 = ConvexBody<f32>;
