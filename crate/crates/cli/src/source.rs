//! Body sources: JSON files and `NAME:params` specs.

use std::path::Path;

use anyhow::{bail, Context, Result};
use hurwitz_core::{Body, BodySpec, HypocycloidSpec, Support};

pub enum Source {
    Body(Body),
    Hypocycloid(HypocycloidSpec<f64>),
}

impl Source {
    pub fn into_body(self) -> Result<Body> {
        match self {
            Source::Body(b) => Ok(b),
            Source::Hypocycloid(_) => bail!("BadSpec: a hypocycloid is a curve, not a convex body"),
        }
    }
}

pub fn load_body_file(path: &Path) -> Result<Body> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let support = Support::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    support.validate_default().with_context(|| format!("validating {}", path.display()))
}

fn numbers(params: &str, name: &str, min: usize, max: usize) -> Result<Vec<f64>> {
    let parts: Vec<&str> = params.split(',').map(str::trim).collect();
    if parts.len() < min || parts.len() > max {
        bail!("BadSpec: {name} takes {min}..={max} comma-separated parameters, got '{params}'");
    }
    parts
        .iter()
        .map(|p| p.parse::<f64>().with_context(|| format!("BadSpec: '{p}' in {name} spec is not a number")))
        .collect()
}

fn integer(x: f64, what: &str) -> Result<u64> {
    if x.fract() != 0.0 || x < 0.0 || x > u32::MAX as f64 {
        bail!("BadSpec: {what} must be a nonnegative integer, got {x}");
    }
    Ok(x as u64)
}

/// Parse `circle:R`, `astroid:a0,amp`, `deltoid:a0,amp`,
/// `hypo-parallel:k,a0,amp`, `random:seed,degree[,cw]` or
/// `hypocycloid:m/n,r` (also `hypocycloid:k,r` for integer `k`).
pub fn parse_spec(text: &str) -> Result<Source> {
    let (name, params) = text
        .split_once(':')
        .with_context(|| format!("BadSpec: expected NAME:params, got '{text}'"))?;
    let spec = match name {
        "circle" => {
            let v = numbers(params, name, 1, 1)?;
            BodySpec::Circle { radius: v[0] }
        }
        "astroid" => {
            let v = numbers(params, name, 2, 2)?;
            BodySpec::AstroidParallel { a0: v[0], amp: v[1] }
        }
        "deltoid" => {
            let v = numbers(params, name, 2, 2)?;
            BodySpec::DeltoidParallel { a0: v[0], amp: v[1] }
        }
        "hypo-parallel" => {
            let v = numbers(params, name, 3, 3)?;
            BodySpec::HypocycloidParallel { k: integer(v[0], "k")? as u32, a0: v[1], amp: v[2] }
        }
        "random" => {
            let parts: Vec<&str> = params.split(',').map(str::trim).collect();
            let constant_width = match parts.get(2) {
                None => false,
                Some(&"cw") | Some(&"1") | Some(&"true") => true,
                Some(&"0") | Some(&"false") => false,
                Some(other) => bail!("BadSpec: third random parameter must be 'cw', got '{other}'"),
            };
            let v = numbers(&parts[..parts.len().min(2)].join(","), name, 2, 2)?;
            BodySpec::Random { seed: integer(v[0], "seed")?, degree: integer(v[1], "degree")? as u32, constant_width }
        }
        "hypocycloid" => {
            let (k, r) = params
                .split_once(',')
                .with_context(|| format!("BadSpec: hypocycloid takes m/n,r, got '{params}'"))?;
            let (m, n) = match k.split_once('/') {
                Some((m, n)) => (m.trim().parse::<u32>(), n.trim().parse::<u32>()),
                None => (k.trim().parse::<u32>(), Ok(1)),
            };
            let (Ok(m), Ok(n)) = (m, n) else { bail!("BadSpec: hypocycloid ratio '{k}' is not m/n") };
            let r: f64 = r.trim().parse().with_context(|| format!("BadSpec: radius '{r}' is not a number"))?;
            return Ok(Source::Hypocycloid(HypocycloidSpec::new(m, n, r)?));
        }
        other => bail!(
            "BadSpec: unknown body '{other}' (circle, astroid, deltoid, hypo-parallel, random, hypocycloid)"
        ),
    };
    Ok(Source::Body(spec.construct()?))
}
