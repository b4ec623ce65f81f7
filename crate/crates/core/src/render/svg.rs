use std::fmt::Write as _;

use serde::Serialize;

use super::sample::{sample_curve, sample_hypocycloid, CurveKind};
use super::Polyline;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral_body::{ConvexBody, Harmonic, HypocycloidSpec, TrigSupport};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Style {
    pub stroke: String,
    /// Stroke width in screen pixels.
    pub width: f64,
    pub dash: Option<String>,
}

impl Style {
    pub fn solid(stroke: &str, width: f64) -> Self {
        Self { stroke: stroke.to_string(), width, dash: None }
    }

    pub fn dashed(stroke: &str, width: f64, dash: &str) -> Self {
        Self { stroke: stroke.to_string(), width, dash: Some(dash.to_string()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Layer {
    pub label: String,
    pub polyline: Polyline<f64>,
    pub style: Style,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Scene {
    pub layers: Vec<Layer>,
}

impl Scene {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push<T: Real>(&mut self, label: &str, polyline: &Polyline<T>, style: Style) {
        self.layers.push(Layer { label: label.to_string(), polyline: polyline.to_f64(), style });
    }

    /// `[xmin, ymin, xmax, ymax]` over all layers.
    pub fn bounds(&self) -> Option<[f64; 4]> {
        self.layers.iter().filter_map(|l| l.polyline.bounds()).reduce(|a, b| {
            [a[0].min(b[0]), a[1].min(b[1]), a[2].max(b[2]), a[3].max(b[3])]
        })
    }
}

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 0.05;

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Standalone SVG 1.1 document. The y axis points up.
pub fn write_svg(scene: &Scene) -> Result<Vec<u8>> {
    let [x0, y0, x1, y1] = scene.bounds().ok_or(Error::EmptyScene)?;
    let extent = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = MARGIN * extent;
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let (w, h) = (w.max(2.0 * pad), h.max(2.0 * pad));
    let (px, py) = if w >= h { (CANVAS, CANVAS * h / w) } else { (CANVAS * w / h, CANVAS) };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(px),
        num(py),
        num(x0 - pad),
        num(-(y1 + pad)),
        num(w),
        num(h)
    );
    for layer in &scene.layers {
        let poly = &layer.polyline;
        let Some([a0, b0, a1, b1]) = poly.bounds() else { continue };
        let mut attrs = format!(
            "fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" vector-effect=\"non-scaling-stroke\"",
            layer.style.stroke,
            num(layer.style.width)
        );
        if let Some(d) = &layer.style.dash {
            let _ = write!(attrs, " stroke-dasharray=\"{d}\"");
        }
        let _ = writeln!(out, "<g id=\"{}\">", layer.label);
        if (a1 - a0).max(b1 - b0) <= 1e-9 * extent {
            // A curve collapsed to a point is drawn as a dot.
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"none\"/>",
                num((a0 + a1) / 2.0),
                num(-(b0 + b1) / 2.0),
                num(0.01 * extent),
                layer.style.stroke
            );
        } else {
            let points: Vec<String> = poly.vertices.iter().map(|v| format!("{},{}", num(v[0]), num(-v[1]))).collect();
            let tag = if poly.closed { "polygon" } else { "polyline" };
            let _ = writeln!(out, "<{tag} points=\"{}\" {attrs}/>", points.join(" "));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out.into_bytes())
}

const PALETTE: [&str; 5] = ["#1f4e79", "#c0392b", "#27ae60", "#8e44ad", "#d35400"];

/// Hypocycloids with `k = 3, 4, 5/2` and unit rolling radius, side by side.
pub fn figure_hypocycloids(m: usize) -> Result<Scene> {
    let mut scene = Scene::new();
    let mut x = 0.0;
    for (i, (num_, den)) in [(3, 1), (4, 1), (5, 2)].into_iter().enumerate() {
        let spec = HypocycloidSpec::<f64>::new(num_, den, 1.0)?;
        let radius = spec.fixed_radius();
        x += radius;
        let poly = sample_hypocycloid(&spec, m)?.translated([x, 0.0]);
        scene.push(&format!("hypocycloid_{num_}_{den}"), &poly, Style::solid(PALETTE[i], 1.5));
        x += radius * 1.2;
    }
    Ok(scene)
}

/// Convex curves at distance `L/2π` from an astroid and from a deltoid,
/// drawn with the hypocycloids they are parallel to.
pub fn figure_parallels(m: usize) -> Result<Scene> {
    let mut scene = Scene::new();
    let bodies = [
        ("astroid", TrigSupport::new(1.0, vec![Harmonic::new(2, 0.0, 0.2)])?),
        ("deltoid", TrigSupport::new(1.0, vec![Harmonic::new(3, 0.1, 0.0)])?),
    ];
    for (i, (name, support)) in bodies.into_iter().enumerate() {
        let body = support.validate_default()?;
        let shift = [3.0 * i as f64, 0.0];
        let outer = sample_curve(&body, CurveKind::Boundary, m)?.translated(shift);
        let core = sample_curve(&body, CurveKind::Parallel(-body.a0()), m)?.translated(shift);
        scene.push(&format!("{name}_parallel"), &outer, Style::solid(PALETTE[0], 1.5));
        scene.push(name, &core, Style::solid(PALETTE[1], 1.0));
    }
    Ok(scene)
}

/// Boundary, evolute, inner parallel at distance `L/2π` and pedal curve of a
/// body, plus the Wigner caustic when requested.
pub fn figure_curves<T: Real>(body: &ConvexBody<T>, m: usize, wigner: bool) -> Result<Scene> {
    let mut scene = Scene::new();
    scene.push("boundary", &sample_curve(body, CurveKind::Boundary, m)?, Style::solid(PALETTE[0], 1.5));
    scene.push("evolute", &sample_curve(body, CurveKind::Evolute, m)?, Style::solid(PALETTE[1], 1.0));
    scene.push(
        "parallel",
        &sample_curve(body, CurveKind::Parallel(-body.a0()), m)?,
        Style::solid(PALETTE[2], 1.0),
    );
    scene.push("pedal", &sample_curve(body, CurveKind::Pedal, m)?, Style::dashed(PALETTE[3], 1.0, "4 3"));
    if wigner {
        scene.push("wigner", &sample_curve(body, CurveKind::Wigner, m)?, Style::dashed(PALETTE[4], 1.0, "1 3"));
    }
    Ok(scene)
}
