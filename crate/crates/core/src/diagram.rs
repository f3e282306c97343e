//! Overlay drawing of a partition's enhanced arcs and its image's classical arcs.
//!
//! Image vertex `j` sits at `(2(j-1), 0)`; source vertex `i` sits one unit up at
//! `(2i-1, 1)`. Every arc is a tent whose apex height equals its half-width, so the
//! tent of a source arc `(x, y)` meets the tent of its image `(x, y+1)` at the same
//! apex: extending the source tent's legs down to the baseline gives the image tent.
//! A source loop `(x, x)` is drawn as the unit tent over baseline columns `2x-2` and
//! `2x`, whose apex is the source vertex itself.

use std::fmt::Write as _;

use serde::Serialize;

use crate::arcs::{arcs_classical, arcs_enhanced, Arc};
use crate::bijection::forward;
use crate::error::{Error, Result};
use crate::partition::PartialPartition;

/// Largest ambient `n` the renderer accepts.
pub const MAX_RENDER_N: usize = 40;

const UNIT: i64 = 30;
const MARGIN: i64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    /// Arcs of the partition of a subset of `[n]`.
    Source,
    /// Arcs of its image, a partition of `[n+1]`.
    Image,
}

pub type Point = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcPath {
    pub layer: Layer,
    pub arc: Arc,
    pub points: Vec<Point>,
}

impl ArcPath {
    pub fn apex(&self) -> Point {
        self.points[1]
    }
}

fn source_tent(a: &Arc) -> Vec<Point> {
    let (x, y) = (a.left as i64, a.right as i64);
    if x == y {
        vec![(2 * x - 2, 0), (2 * x - 1, 1), (2 * x, 0)]
    } else {
        vec![(2 * x - 1, 1), (x + y - 1, y - x + 1), (2 * y - 1, 1)]
    }
}

fn image_tent(a: &Arc) -> Vec<Point> {
    let (x, z) = (a.left as i64, a.right as i64);
    vec![(2 * x - 2, 0), (x + z - 2, z - x), (2 * z - 2, 0)]
}

/// Tent polylines for every enhanced arc of `p` followed by every classical arc of
/// `forward(p)`.
pub fn render_strip_coordinates(p: &PartialPartition) -> Result<Vec<ArcPath>> {
    let image = forward(p)?;
    let mut paths: Vec<ArcPath> = arcs_enhanced(p)
        .arcs()
        .iter()
        .map(|a| ArcPath {
            layer: Layer::Source,
            arc: *a,
            points: source_tent(a),
        })
        .collect();
    paths.extend(arcs_classical(&image).arcs().iter().map(|a| ArcPath {
        layer: Layer::Image,
        arc: *a,
        points: image_tent(a),
    }));
    Ok(paths)
}

/// Colours of the two layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Style {
    pub source_color: String,
    pub image_color: String,
}

impl Default for Style {
    fn default() -> Self {
        Self {
            source_color: "#000000".into(),
            image_color: "#1f5fa8".into(),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Standalone SVG 1.1 document of the overlay.
pub fn render_overlay(p: &PartialPartition, style: &Style) -> Result<String> {
    if p.n() > MAX_RENDER_N {
        return Err(Error::TooLarge(p.n()));
    }
    let paths = render_strip_coordinates(p)?;
    let image = forward(p)?;
    let top = paths.iter().map(|a| a.apex().1).max().unwrap_or(0).max(1);
    let width = 2 * p.n() as i64 * UNIT + 2 * MARGIN;
    let height = top * UNIT + 2 * MARGIN;
    let px = |(x, y): Point| (MARGIN + x * UNIT, MARGIN + (top - y) * UNIT);
    let (src, img) = (escape(&style.source_color), escape(&style.image_color));

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        s,
        "  <title>{} and {}</title>",
        escape(&p.to_string()),
        escape(&image.to_string())
    );
    let _ = writeln!(
        s,
        "  <rect width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>"
    );
    for layer in [Layer::Image, Layer::Source] {
        for path in paths.iter().filter(|a| a.layer == layer) {
            let d = path
                .points
                .iter()
                .enumerate()
                .map(|(i, &pt)| {
                    let (x, y) = px(pt);
                    format!("{}{x} {y}", if i == 0 { "M" } else { "L" })
                })
                .collect::<Vec<_>>()
                .join(" ");
            let (class, attrs) = match layer {
                Layer::Image => ("pihat-arc", format!("stroke=\"{img}\" stroke-width=\"4\" stroke-dasharray=\"2 6\" stroke-linecap=\"round\"")),
                Layer::Source => ("pi-arc", format!("stroke=\"{src}\" stroke-width=\"3\"")),
            };
            let _ = writeln!(
                s,
                "  <path class=\"{class}\" data-arc=\"{},{}\" d=\"{d}\" fill=\"none\" {attrs}/>",
                path.arc.left, path.arc.right
            );
        }
    }
    for j in 1..=image.n() as i64 {
        let (cx, cy) = px((2 * (j - 1), 0));
        let _ = writeln!(
            s,
            "  <circle class=\"pihat-vertex\" cx=\"{cx}\" cy=\"{cy}\" r=\"5\" fill=\"{img}\"/>"
        );
    }
    for (i, &l) in p.labels().iter().enumerate() {
        if l != 0 {
            let (cx, cy) = px((2 * (i as i64 + 1) - 1, 1));
            let _ = writeln!(
                s,
                "  <circle class=\"pi-vertex\" cx=\"{cx}\" cy=\"{cy}\" r=\"5\" fill=\"{src}\"/>"
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
