use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path as FsPath;

use anyhow::{bail, Context, Result};
use hurwitz_core::functionals::{functionals_quadrature, functionals_spectral, FunctionalSet, QuadratureGrid};
use hurwitz_core::render::{sample_curve, sample_hypocycloid, write_svg, CurveKind, Scene, Style};
use hurwitz_core::verdicts::{run_suite, Path, SuiteConfig, SuiteReport, TheoremId};
use hurwitz_core::visual_angle::ExteriorConfig;
use hurwitz_core::{sweep_spec, Body, BodySpec, Support};
use rayon::prelude::*;
use serde::Serialize;

use crate::source::{load_body_file, parse_spec, Source};
use crate::{BodyArgs, NumericArgs, Outcome, PathChoice, RenderArgs, SourceArgs, SweepArgs};

fn resolve(source: &SourceArgs) -> Result<Source> {
    match (&source.body, &source.spec) {
        (Some(path), None) => Ok(Source::Body(load_body_file(path)?)),
        (None, Some(spec)) => parse_spec(spec),
        _ => bail!("give exactly one of --body or --spec"),
    }
}

fn emit(out: Option<&FsPath>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text.into_bytes())
}

fn quadrature_grid(numeric: &NumericArgs, body: &Body) -> Result<QuadratureGrid> {
    Ok(match numeric.nodes {
        Some(m) => QuadratureGrid::new(m, body.degree())?,
        None => QuadratureGrid::for_degree(body.degree()),
    })
}

fn suite_config(numeric: &NumericArgs) -> Result<SuiteConfig<f64>> {
    let mut exterior = ExteriorConfig::default();
    if let Some(n) = numeric.exterior_nodes {
        exterior.nodes_phi = n;
        exterior.nodes_delta = n;
    }
    if let Some(c) = numeric.collar {
        exterior.delta_min = c;
    }
    exterior.validate()?;
    if !(numeric.tol > 0.0 && numeric.tol < 1.0) {
        bail!("BadConfig: --tol must lie in (0, 1), got {}", numeric.tol);
    }
    Ok(SuiteConfig {
        tol: numeric.tol,
        spectral: numeric.path != PathChoice::Geometric,
        geometric: numeric.path != PathChoice::Spectral,
        quadrature_nodes: numeric.nodes,
        exterior,
    })
}

#[derive(Serialize)]
struct Report<'a> {
    body: &'a Support,
    constant_width: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectral: Option<FunctionalSet<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quadrature: Option<FunctionalSet<f64>>,
}

pub fn report(args: &BodyArgs) -> Result<Outcome> {
    let body = resolve(&args.source)?.into_body()?;
    let numeric = &args.numeric;
    let spectral = (numeric.path != PathChoice::Geometric).then(|| functionals_spectral(&body));
    let quadrature = match numeric.path {
        PathChoice::Spectral => None,
        _ => Some(functionals_quadrature(&body, quadrature_grid(numeric, &body)?)?),
    };
    let cw_tol = numeric.tol * body.a0();
    let report = Report { body: body.support(), constant_width: body.constant_width(cw_tol).is_some(), spectral, quadrature };
    emit(numeric.out.as_deref(), &json(&report)?)?;
    Ok(Outcome::Pass)
}

fn verdict_table(report: &SuiteReport<f64>) -> String {
    let mut out = format!(
        "{:<18} {:<9} {:<5} {:>14} {:>14} {:>14} {:<8} {}\n",
        "theorem", "path", "appl", "lhs", "rhs", "residual", "equality", "notes"
    );
    for v in &report.verdicts {
        let mut notes = v.notes.join("; ");
        if let Some(c) = &v.secondary {
            let extra = format!("second: {:.6e} >= {:.6e}", c.lhs, c.rhs);
            notes = if notes.is_empty() { extra } else { format!("{extra}; {notes}") };
        }
        out.push_str(&format!(
            "{:<18} {:<9} {:<5} {:>14.6e} {:>14.6e} {:>14.6e} {:<8} {}\n",
            v.id.name(),
            match v.path {
                Path::Spectral => "spectral",
                Path::Geometric => "geometric",
            },
            if v.applicable { "yes" } else { "no" },
            v.lhs,
            v.rhs,
            v.residual,
            if !v.applicable {
                "-"
            } else if v.equality {
                "yes"
            } else {
                "no"
            },
            notes
        ));
    }
    let support: Vec<String> = report.classification.support.iter().map(|n| n.to_string()).collect();
    out.push_str(&format!(
        "class: {} (harmonics {{{}}})\nconstant width: {}\nresult: {}\n",
        report.classification.class,
        support.join(", "),
        report.constant_width,
        if report.pass { "pass" } else { "VIOLATION" }
    ));
    out
}

pub fn verify(args: &BodyArgs) -> Result<Outcome> {
    let body = resolve(&args.source)?.into_body()?;
    let config = suite_config(&args.numeric)?;
    let report = run_suite(&body, &config)?;
    match &args.numeric.out {
        Some(path) => {
            emit(Some(path), &json(&report)?)?;
            emit(None, verdict_table(&report).as_bytes())?;
        }
        None => emit(None, verdict_table(&report).as_bytes())?,
    }
    Ok(if report.pass { Outcome::Pass } else { Outcome::Violation })
}

const LAYER_COLORS: [&str; 6] = ["#1f4e79", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#2c3e50"];

pub fn render(args: &RenderArgs) -> Result<Outcome> {
    let source = resolve(&args.source)?;
    let mut scene = Scene::new();
    for (i, raw) in args.kind.split(',').map(str::trim).filter(|k| !k.is_empty()).enumerate() {
        let style = Style::solid(LAYER_COLORS[i % LAYER_COLORS.len()], 1.5);
        let (name, param) = match raw.split_once('=') {
            Some((n, p)) => (n, Some(p)),
            None => (raw, None),
        };
        let body = |source: &Source| -> Result<Body> {
            match source {
                Source::Body(b) => Ok(b.clone()),
                Source::Hypocycloid(_) => bail!("BadSpec: kind '{name}' needs a convex body, not a hypocycloid"),
            }
        };
        let poly = match (name, param) {
            ("curve", None) => match &source {
                Source::Hypocycloid(spec) => sample_hypocycloid(spec, args.samples)?,
                Source::Body(_) => bail!("BadSpec: kind 'curve' needs a hypocycloid spec"),
            },
            ("boundary", None) => sample_curve(&body(&source)?, CurveKind::Boundary, args.samples)?,
            ("evolute", None) => sample_curve(&body(&source)?, CurveKind::Evolute, args.samples)?,
            ("pedal", None) => sample_curve(&body(&source)?, CurveKind::Pedal, args.samples)?,
            ("wigner", None) => sample_curve(&body(&source)?, CurveKind::Wigner, args.samples)?,
            ("parallel", r) => {
                let b = body(&source)?;
                let r = match r {
                    Some(text) => text.parse::<f64>().with_context(|| format!("BadSpec: parallel distance '{text}'"))?,
                    None => -b.a0(),
                };
                sample_curve(&b, CurveKind::Parallel(r), args.samples)?
            }
            _ => bail!("BadSpec: unknown kind '{raw}' (boundary, evolute, pedal, parallel[=r], wigner, curve)"),
        };
        scene.push(name, &poly, style);
    }
    emit(args.out.as_deref(), &write_svg(&scene)?)?;
    Ok(Outcome::Pass)
}

#[derive(Serialize, Default)]
struct TheoremStats {
    applicable: usize,
    min_residual: Option<f64>,
    equality_hits: usize,
    predicted_equality_hits: usize,
    equality_mismatches: usize,
}

#[derive(Serialize)]
struct Violation {
    index: u64,
    theorem: TheoremId,
    path: Path,
    residual: f64,
    body: BodySpec<f64>,
    support: Support,
}

#[derive(Serialize)]
struct Disagreement {
    index: u64,
    theorem: TheoremId,
    spectral: f64,
    geometric: f64,
    tolerance: f64,
}

#[derive(Serialize)]
struct SweepSummary {
    seed: u64,
    count: usize,
    constant_width: usize,
    geometric_bodies: usize,
    paper_discrepancy_notes: usize,
    theorems: BTreeMap<String, TheoremStats>,
    /// Largest |spectral − geometric| residual gap over its tolerance.
    max_agreement_ratio: Option<f64>,
    violations: Vec<Violation>,
    disagreements: Vec<Disagreement>,
    pass: bool,
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome> {
    if args.count == 0 {
        bail!("BadConfig: --count must be >= 1");
    }
    if args.geometric_every == 0 {
        bail!("BadConfig: --geometric-every must be >= 1");
    }
    let base = suite_config(&args.numeric)?;
    let spectral_wanted = args.numeric.path != PathChoice::Geometric;
    let geometric_wanted = args.numeric.path != PathChoice::Spectral;

    let results: Vec<Result<(u64, BodySpec<f64>, Body, SuiteReport<f64>)>> = (0..args.count as u64)
        .into_par_iter()
        .map(|i| {
            let spec: BodySpec<f64> = sweep_spec(args.seed, i);
            let body = spec.construct().with_context(|| format!("sweep body {i}"))?;
            let geometric = geometric_wanted && (!spectral_wanted || i % args.geometric_every as u64 == 0);
            let config = SuiteConfig { spectral: spectral_wanted || geometric, geometric, ..base };
            let report = run_suite(&body, &config).with_context(|| format!("sweep body {i}"))?;
            Ok((i, spec, body, report))
        })
        .collect();

    let mut summary = SweepSummary {
        seed: args.seed,
        count: args.count,
        constant_width: 0,
        geometric_bodies: 0,
        paper_discrepancy_notes: 0,
        theorems: BTreeMap::new(),
        max_agreement_ratio: None,
        violations: Vec::new(),
        disagreements: Vec::new(),
        pass: true,
    };
    for result in results {
        let (index, spec, body, report) = result?;
        summary.constant_width += usize::from(report.constant_width);
        summary.geometric_bodies += usize::from(report.verdicts.iter().any(|v| v.path == Path::Geometric));
        for v in &report.verdicts {
            if v.path == Path::Spectral && !spectral_wanted {
                continue;
            }
            summary.paper_discrepancy_notes += v.notes.iter().filter(|n| n.starts_with("paper discrepancy")).count();
            let key = format!(
                "{}/{}",
                v.id.name(),
                match v.path {
                    Path::Spectral => "spectral",
                    Path::Geometric => "geometric",
                }
            );
            let stats = summary.theorems.entry(key).or_default();
            if !v.applicable {
                continue;
            }
            stats.applicable += 1;
            stats.min_residual = Some(stats.min_residual.map_or(v.residual, |m| m.min(v.residual)));
            stats.equality_hits += usize::from(v.equality);
            stats.predicted_equality_hits += usize::from(v.predicted_equality);
            stats.equality_mismatches += usize::from(v.equality_mismatch());
            if v.violated() {
                summary.violations.push(Violation {
                    index,
                    theorem: v.id,
                    path: v.path,
                    residual: v.residual,
                    body: spec.clone(),
                    support: body.support().clone(),
                });
            }
        }
        for id in TheoremId::ALL {
            let (Some(s), Some(g)) = (report.find(id, Path::Spectral), report.find(id, Path::Geometric)) else {
                continue;
            };
            if !g.applicable {
                continue;
            }
            let gap = (s.residual - g.residual).abs();
            let ratio = gap / g.tolerance;
            summary.max_agreement_ratio = Some(summary.max_agreement_ratio.map_or(ratio, |m| m.max(ratio)));
            if gap > g.tolerance {
                summary.disagreements.push(Disagreement {
                    index,
                    theorem: id,
                    spectral: s.residual,
                    geometric: g.residual,
                    tolerance: g.tolerance,
                });
            }
        }
    }
    summary.pass = summary.violations.is_empty() && summary.disagreements.is_empty();
    for v in &summary.violations {
        eprintln!(
            "violation: body {} theorem {} ({:?}) residual {:e}: {}",
            v.index,
            v.theorem,
            v.path,
            v.residual,
            serde_json::to_string(&v.support)?
        );
    }
    emit(args.numeric.out.as_deref(), &json(&summary)?)?;
    Ok(if summary.pass { Outcome::Pass } else { Outcome::Violation })
}
