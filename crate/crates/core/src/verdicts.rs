//! Per-theorem verdicts on a body and classification of equality cases.
//!
//! Every claim is oriented as `lhs ≥ rhs`. The spectral path evaluates both
//! sides from coefficient sums and closed-form exterior integrals; the
//! geometric path uses quadrature functionals and numerically integrated
//! visual-angle kernels.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::functionals::{functionals_quadrature, functionals_spectral, FunctionalSet, QuadratureGrid};
use crate::scalar::Real;
use crate::spectral_body::ConvexBody;
use crate::visual_angle::{exterior_integral, ExteriorConfig, Kernel, Method};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Hurwitz,
    Teo51,
    Teo71,
    Teo73,
    Bvb,
    CorPedalEvolute,
    Teo64,
    Coroaf,
    CorDelta2Cw,
    WignerZwier,
    WignerPedal,
    CrExternal,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::Hurwitz,
        TheoremId::Teo51,
        TheoremId::Teo71,
        TheoremId::Teo73,
        TheoremId::Bvb,
        TheoremId::CorPedalEvolute,
        TheoremId::Teo64,
        TheoremId::Coroaf,
        TheoremId::CorDelta2Cw,
        TheoremId::WignerZwier,
        TheoremId::WignerPedal,
        TheoremId::CrExternal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Hurwitz => "hurwitz",
            TheoremId::Teo51 => "teo51",
            TheoremId::Teo71 => "teo71",
            TheoremId::Teo73 => "teo73",
            TheoremId::Bvb => "bvb",
            TheoremId::CorPedalEvolute => "cor_pedal_evolute",
            TheoremId::Teo64 => "teo64",
            TheoremId::Coroaf => "coroaf",
            TheoremId::CorDelta2Cw => "cor_delta2_cw",
            TheoremId::WignerZwier => "wigner_zwier",
            TheoremId::WignerPedal => "wigner_pedal",
            TheoremId::CrExternal => "cr_external",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.name() == name)
    }

    pub fn constant_width_only(self) -> bool {
        matches!(
            self,
            TheoremId::Bvb
                | TheoremId::CorPedalEvolute
                | TheoremId::Teo64
                | TheoremId::Coroaf
                | TheoremId::CorDelta2Cw
                | TheoremId::CrExternal
        )
    }

    /// Rests on an inequality imported from outside the theory implemented
    /// here.
    pub fn external(self) -> bool {
        matches!(self, TheoremId::CorPedalEvolute | TheoremId::CrExternal)
    }

    /// Visual-angle kernel on the right-hand side, if any.
    pub fn kernel<T: Real>(self) -> Option<Kernel<T>> {
        match self {
            TheoremId::Teo51 => Some(Kernel::teo51()),
            TheoremId::Teo71 | TheoremId::Teo73 => Some(Kernel::sin3()),
            TheoremId::Teo64 => Some(Kernel::teo64()),
            _ => None,
        }
    }

    /// Whether equality is expected for a body whose nonzero harmonics
    /// (n ≥ 2) are `support`.
    pub fn predicts_equality(self, support: &BTreeSet<u32>) -> bool {
        let within = |allowed: &[u32]| support.iter().all(|n| allowed.contains(n));
        match self {
            TheoremId::Hurwitz => within(&[2]),
            TheoremId::Teo51 | TheoremId::Teo71 | TheoremId::Teo73 => within(&[2, 3]),
            TheoremId::Bvb
            | TheoremId::CorPedalEvolute
            | TheoremId::Coroaf
            | TheoremId::CorDelta2Cw
            | TheoremId::CrExternal => within(&[3]),
            TheoremId::Teo64 => within(&[3, 5]),
            TheoremId::WignerZwier => support.iter().all(|n| n % 2 == 1),
            TheoremId::WignerPedal => support.is_empty(),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    Spectral,
    Geometric,
}

/// A second claim reported next to the main one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison<T> {
    pub lhs: T,
    pub rhs: T,
    pub residual: T,
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict<T> {
    pub id: TheoremId,
    pub applicable: bool,
    pub lhs: T,
    pub rhs: T,
    pub residual: T,
    pub equality: bool,
    pub predicted_equality: bool,
    pub path: Path,
    /// Absolute uncertainty of the residual from numerical integration.
    pub error_bar: T,
    /// Threshold below which `|residual|` counts as equality.
    pub tolerance: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secondary: Option<Comparison<T>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl<T: Real> Verdict<T> {
    /// The claim fails when the residual is negative beyond tolerance.
    pub fn violated(&self) -> bool {
        if !self.applicable {
            return false;
        }
        let below = |r: T| r < -self.tolerance;
        below(self.residual) || self.secondary.as_ref().is_some_and(|c| below(c.residual))
    }

    /// Observed equality disagrees with the harmonic-support prediction.
    pub fn equality_mismatch(&self) -> bool {
        self.applicable && self.equality != self.predicted_equality
    }
}

/// Shapes for which the inequalities become equalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityClass {
    Disk,
    AstroidParallel,
    SteinerParallel,
    Hypocycloid5Parallel,
    MinkowskiSum { components: Vec<EqualityClass> },
    None,
}

impl EqualityClass {
    fn single(n: u32) -> Self {
        match n {
            2 => EqualityClass::AstroidParallel,
            3 => EqualityClass::SteinerParallel,
            5 => EqualityClass::Hypocycloid5Parallel,
            _ => EqualityClass::None,
        }
    }
}

impl fmt::Display for EqualityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqualityClass::Disk => f.write_str("disk"),
            EqualityClass::AstroidParallel => f.write_str("astroid_parallel"),
            EqualityClass::SteinerParallel => f.write_str("steiner_parallel"),
            EqualityClass::Hypocycloid5Parallel => f.write_str("hypocycloid5_parallel"),
            EqualityClass::MinkowskiSum { components } => {
                let names: Vec<String> = components.iter().map(|c| c.to_string()).collect();
                write!(f, "minkowski_sum{{{}}}", names.join(", "))
            }
            EqualityClass::None => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: EqualityClass,
    /// Harmonics `n ≥ 2` with `c_n > tol·a0`.
    pub support: BTreeSet<u32>,
}

/// Nonzero harmonics `n ≥ 2` of a body, relative to `tol·a0`.
pub fn harmonic_support<T: Real>(body: &ConvexBody<T>, tol: T) -> BTreeSet<u32> {
    let cut = tol * body.a0();
    body.harmonics()
        .iter()
        .filter(|h| h.n >= 2 && h.c_sq().sqrt() > cut)
        .map(|h| h.n)
        .collect()
}

pub fn classify_equality<T: Real>(body: &ConvexBody<T>, tol: T) -> Classification {
    let support = harmonic_support(body, tol);
    let v: Vec<u32> = support.iter().copied().collect();
    let class = match v.as_slice() {
        [] => EqualityClass::Disk,
        [n] if matches!(n, 2 | 3 | 5) => EqualityClass::single(*n),
        [2, 3] | [3, 5] => EqualityClass::MinkowskiSum { components: v.iter().map(|&n| EqualityClass::single(n)).collect() },
        _ => EqualityClass::None,
    };
    Classification { class, support }
}

/// Controls for [`verify`] and [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteConfig<T> {
    /// Relative tolerance for equality and sign decisions.
    pub tol: T,
    pub spectral: bool,
    pub geometric: bool,
    /// Quadrature grid for geometric functionals; `None` picks one from the
    /// degree.
    pub quadrature_nodes: Option<usize>,
    pub exterior: ExteriorConfig<T>,
}

impl<T: Real> Default for SuiteConfig<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-9),
            spectral: true,
            geometric: true,
            quadrature_nodes: None,
            exterior: ExteriorConfig::default(),
        }
    }
}

impl<T: Real> SuiteConfig<T> {
    pub fn spectral_only() -> Self {
        Self { geometric: false, ..Self::default() }
    }
}

/// Exterior integral with its uncertainty.
#[derive(Debug, Clone, Copy)]
struct Integral<T> {
    value: T,
    error_bar: T,
}

/// Everything a verdict needs from one path.
struct Inputs<T> {
    f: FunctionalSet<T>,
    path: Path,
    teo51: Option<Integral<T>>,
    sin3: Option<Integral<T>>,
    teo64: Option<Integral<T>>,
}

impl<T: Real> Inputs<T> {
    fn build(body: &ConvexBody<T>, path: Path, ids: &[TheoremId], config: &SuiteConfig<T>) -> Result<Self> {
        let exterior = &config.exterior;
        let f = match path {
            Path::Spectral => functionals_spectral(body),
            Path::Geometric => {
                let grid = match config.quadrature_nodes {
                    Some(m) => QuadratureGrid::new(m, body.degree())?,
                    None => QuadratureGrid::for_degree(body.degree()),
                };
                functionals_quadrature(body, grid)?
            }
        };
        let spectral_f = functionals_spectral(body);
        let needs = |k: &Kernel<T>| ids.iter().any(|id| id.kernel::<T>().is_some_and(|kk| kk.kind() == k.kind()));
        let integral = |k: Kernel<T>| -> Result<Option<Integral<T>>> {
            if !needs(&k) {
                return Ok(None);
            }
            Ok(Some(match path {
                Path::Spectral => Integral {
                    value: k.spectral_integral(&spectral_f).expect("named kernels have closed forms"),
                    error_bar: T::zero(),
                },
                Path::Geometric => {
                    let cfg = ExteriorConfig { method: Method::TangentCoords, ..*exterior };
                    let r = exterior_integral(body, &k, &cfg)?;
                    Integral { value: r.value, error_bar: r.error_bar }
                }
            }))
        };
        Ok(Self {
            teo51: integral(Kernel::teo51())?,
            sin3: integral(Kernel::sin3())?,
            teo64: integral(Kernel::teo64())?,
            f,
            path,
        })
    }
}

fn evaluate<T: Real>(
    id: TheoremId,
    inputs: &Inputs<T>,
    constant_width: bool,
    support: &BTreeSet<u32>,
    tol: T,
) -> Verdict<T> {
    let f = &inputs.f;
    let pi = T::PI();
    let l2 = f.length * f.length;
    let fe = f.evolute_area.abs();
    let aw = f.wigner_area.abs();
    let hurwitz_lhs = pi * fe - f.deficit;
    let scale = l2.max(pi * fe);
    let lit = T::lit;
    let integral = |i: Option<Integral<T>>| i.expect("integral prepared for this theorem");

    let mut error_bar = T::zero();
    let mut secondary = None;
    let (lhs, rhs) = match id {
        TheoremId::Hurwitz => (pi * fe, f.deficit),
        TheoremId::Teo51 => {
            let i = integral(inputs.teo51);
            error_bar = lit(5.0) * i.error_bar;
            (hurwitz_lhs, lit(1.25) * l2 + lit(5.0) * i.value)
        }
        TheoremId::Teo71 => {
            let i = integral(inputs.sin3);
            let c = lit(40.0) / lit(9.0);
            error_bar = c * lit(8.0) / lit(9.0) * i.error_bar;
            (hurwitz_lhs, c * (pi * f.pedal_excess + lit(2.0) / lit(3.0) * l2 - lit(8.0) / lit(9.0) * i.value))
        }
        TheoremId::Teo73 => {
            let i = integral(inputs.sin3);
            error_bar = lit(20.0) * lit(4.0) / lit(9.0) * i.error_bar;
            (hurwitz_lhs, lit(20.0) * (pi * f.delta2_sq + l2 / lit(3.0) - lit(4.0) / lit(9.0) * i.value))
        }
        TheoremId::Bvb => (lit(4.0) / lit(9.0) * pi * fe, f.deficit),
        TheoremId::CorPedalEvolute => (fe / lit(8.0), f.pedal_excess),
        TheoremId::Teo64 => {
            let i = integral(inputs.teo64);
            let c = lit(64.0) / lit(9.0);
            error_bar = c * i.error_bar;
            (lit(4.0) / lit(9.0) * pi * fe - f.deficit, c * i.value)
        }
        TheoremId::Coroaf => (hurwitz_lhs, lit(40.0) / lit(9.0) * pi * f.pedal_excess),
        TheoremId::CorDelta2Cw => {
            let (l, r) = (fe, lit(36.0) * f.delta2_sq);
            secondary = Some(Comparison { lhs: l, rhs: r, residual: l - r, equality: false });
            (hurwitz_lhs, lit(20.0) * pi * f.delta2_sq)
        }
        TheoremId::WignerZwier => (f.deficit, lit(4.0) * pi * aw),
        TheoremId::WignerPedal => (f.pedal_excess, aw),
        TheoremId::CrExternal => (f.deficit, lit(32.0) / lit(9.0) * pi * f.pedal_excess),
    };

    let residual = lhs - rhs;
    let tolerance = match inputs.path {
        Path::Spectral => tol * scale,
        Path::Geometric => (tol * scale).max(lit(3.0) * error_bar),
    };
    let applicable = !id.constant_width_only() || constant_width;
    let mut equality = residual.abs() <= tolerance;
    if let Some(c) = secondary.as_mut() {
        c.equality = c.residual.abs() <= tolerance;
        equality = equality && c.equality;
    }
    let predicted_equality = id.predicts_equality(support);

    let mut notes = Vec::new();
    if !applicable {
        notes.push("constant width required".to_string());
    }
    if id.external() {
        notes.push("external: rests on an imported inequality".to_string());
    }
    if id == TheoremId::WignerPedal && constant_width && !support.is_empty() {
        let odd = support.iter().fold(T::zero(), |acc, &n| acc + f.c_sq(n));
        notes.push(format!(
            "paper discrepancy: constant-width equality is claimed, residual (pi/2)*sum c_n^2 = {}",
            (pi / lit(2.0) * odd).to_f64_lossy()
        ));
    }

    Verdict {
        id,
        applicable,
        lhs,
        rhs,
        residual,
        equality,
        predicted_equality,
        path: inputs.path,
        error_bar,
        tolerance,
        secondary,
        notes,
    }
}

fn is_constant_width<T: Real>(body: &ConvexBody<T>, tol: T) -> bool {
    body.constant_width(tol * body.a0()).is_some()
}

/// One theorem on one path.
pub fn verify<T: Real>(body: &ConvexBody<T>, id: TheoremId, path: Path, config: &SuiteConfig<T>) -> Result<Verdict<T>> {
    let inputs = Inputs::build(body, path, &[id], config)?;
    let support = harmonic_support(body, config.tol);
    Ok(evaluate(id, &inputs, is_constant_width(body, config.tol), &support, config.tol))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport<T> {
    pub constant_width: bool,
    pub classification: Classification,
    /// Verdicts ordered by theorem, spectral before geometric.
    pub verdicts: Vec<Verdict<T>>,
    /// No applicable verdict is violated.
    pub pass: bool,
}

impl<T: Real> SuiteReport<T> {
    pub fn find(&self, id: TheoremId, path: Path) -> Option<&Verdict<T>> {
        self.verdicts.iter().find(|v| v.id == id && v.path == path)
    }

    pub fn to_json(&self) -> Result<String>
    where
        T: Serialize,
    {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Every theorem on every selected path, with the equality classification.
pub fn run_suite<T: Real>(body: &ConvexBody<T>, config: &SuiteConfig<T>) -> Result<SuiteReport<T>> {
    let constant_width = is_constant_width(body, config.tol);
    let support = harmonic_support(body, config.tol);
    let mut paths = Vec::new();
    if config.spectral {
        paths.push(Inputs::build(body, Path::Spectral, &TheoremId::ALL, config)?);
    }
    if config.geometric {
        paths.push(Inputs::build(body, Path::Geometric, &TheoremId::ALL, config)?);
    }
    let mut verdicts = Vec::new();
    for id in TheoremId::ALL {
        for inputs in &paths {
            verdicts.push(evaluate(id, inputs, constant_width, &support, config.tol));
        }
    }
    let pass = verdicts.iter().all(|v| !v.violated());
    Ok(SuiteReport { constant_width, classification: classify_equality(body, config.tol), verdicts, pass })
}
