//! Visual angle of a convex body and integrals of kernels of it over the
//! exterior.

mod exterior;
pub mod kernel;
pub mod tangent;

pub use exterior::{
    exterior_integral, exterior_integral_grid, exterior_integral_tangent, visual_moment, ExteriorConfig,
    IntegralResult, Method, MomentResult,
};
pub use kernel::{Kernel, KernelKind};
pub use tangent::{exterior_point, support_line_angles, ExteriorPoint, TangentPair};
