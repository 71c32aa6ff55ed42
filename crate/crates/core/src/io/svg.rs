//! SVG rendering of two-dimensional documents.
//!
//! The viewport is a fixed 800x800 canvas. The world window is the square
//! bounding box of the relevant points grown by 10% on every side, with y
//! pointing up. Planes are drawn as lines clipped to the window with their
//! normal as an arrow at the foot of the perpendicular from the window
//! center; polygons get an arrow at every edge midpoint.

use std::fmt::Write;

use crate::io::document::{ConfigDocument, DocumentError, Geometry};

pub const CANVAS: f64 = 800.0;
const PADDING: f64 = 0.1;
const ARROW_FRACTION: f64 = 0.06;

#[derive(Debug, Clone, Copy)]
struct Window {
    x0: f64,
    y0: f64,
    extent: f64,
}

impl Window {
    fn around(points: &[[f64; 2]]) -> Self {
        let (mut xmin, mut ymin) = (f64::INFINITY, f64::INFINITY);
        let (mut xmax, mut ymax) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            xmin = xmin.min(p[0]);
            xmax = xmax.max(p[0]);
            ymin = ymin.min(p[1]);
            ymax = ymax.max(p[1]);
        }
        let mut extent = (xmax - xmin).max(ymax - ymin);
        if extent.is_nan() || extent <= 0.0 {
            extent = 2.0;
        }
        let (cx, cy) = ((xmin + xmax) / 2.0, (ymin + ymax) / 2.0);
        let padded = extent * (1.0 + 2.0 * PADDING);
        Window {
            x0: cx - padded / 2.0,
            y0: cy - padded / 2.0,
            extent: padded,
        }
    }

    fn center(&self) -> [f64; 2] {
        [self.x0 + self.extent / 2.0, self.y0 + self.extent / 2.0]
    }

    fn to_canvas(self, p: [f64; 2]) -> (f64, f64) {
        (
            (p[0] - self.x0) / self.extent * CANVAS,
            CANVAS - (p[1] - self.y0) / self.extent * CANVAS,
        )
    }

    /// Segment of the line `{x : n . x = c}` inside the window.
    fn clip_line(&self, n: [f64; 2], c: f64) -> Option<([f64; 2], [f64; 2])> {
        let foot = [n[0] * c, n[1] * c];
        let dir = [-n[1], n[0]];
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for axis in 0..2 {
            let (min, max) = if axis == 0 {
                (self.x0, self.x0 + self.extent)
            } else {
                (self.y0, self.y0 + self.extent)
            };
            if dir[axis].abs() < 1e-15 {
                if foot[axis] < min || foot[axis] > max {
                    return None;
                }
                continue;
            }
            let t1 = (min - foot[axis]) / dir[axis];
            let t2 = (max - foot[axis]) / dir[axis];
            lo = lo.max(t1.min(t2));
            hi = hi.min(t1.max(t2));
        }
        (lo < hi).then(|| {
            (
                [foot[0] + lo * dir[0], foot[1] + lo * dir[1]],
                [foot[0] + hi * dir[0], foot[1] + hi * dir[1]],
            )
        })
    }
}

fn pair(v: &[f64]) -> [f64; 2] {
    [v[0], v[1]]
}

fn arrow(out: &mut String, win: &Window, from: [f64; 2], normal: [f64; 2]) {
    let len = ARROW_FRACTION * win.extent;
    let to = [from[0] + len * normal[0], from[1] + len * normal[1]];
    let (x1, y1) = win.to_canvas(from);
    let (x2, y2) = win.to_canvas(to);
    writeln!(
        out,
        r##"  <line class="normal" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#c0392b" stroke-width="2" marker-end="url(#arrow)"/>"##
    )
    .unwrap();
}

/// Renders a two-dimensional document. Output depends only on the document.
pub fn render_svg(doc: &ConfigDocument) -> Result<String, DocumentError> {
    if doc.dimension != 2 {
        return Err(DocumentError::NotTwoDimensional(doc.dimension));
    }
    let mut body = String::new();
    match &doc.geometry {
        Geometry::Planes(planes) => {
            let mut anchors: Vec<[f64; 2]> = planes
                .iter()
                .map(|p| [p.normal[0] * p.offset, p.normal[1] * p.offset])
                .collect();
            anchors.push([0.0, 0.0]);
            let win = Window::around(&anchors);
            let center = win.center();
            for p in planes {
                let n = pair(&p.normal);
                let Some((a, b)) = win.clip_line(n, p.offset) else {
                    continue;
                };
                let (x1, y1) = win.to_canvas(a);
                let (x2, y2) = win.to_canvas(b);
                writeln!(
                    body,
                    r##"  <line class="plane" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#2c3e50" stroke-width="1.5"/>"##
                )
                .unwrap();
                // foot of the perpendicular from the window center
                let d = p.offset - (n[0] * center[0] + n[1] * center[1]);
                arrow(
                    &mut body,
                    &win,
                    [center[0] + d * n[0], center[1] + d * n[1]],
                    n,
                );
            }
        }
        Geometry::Polygon(poly) => {
            let verts: Vec<[f64; 2]> = poly.vertices.iter().map(|v| pair(v)).collect();
            let win = Window::around(&verts);
            let coords: Vec<String> = verts
                .iter()
                .map(|&v| {
                    let (x, y) = win.to_canvas(v);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            writeln!(
                body,
                r##"  <polygon class="polygon" points="{}" fill="#d6eaf8" stroke="#2c3e50" stroke-width="1.5"/>"##,
                coords.join(" ")
            )
            .unwrap();
            // outward normals follow the counterclockwise convention; flip for
            // clockwise input
            let area: f64 = (0..verts.len())
                .map(|i| {
                    let (a, b) = (verts[i], verts[(i + 1) % verts.len()]);
                    a[0] * b[1] - a[1] * b[0]
                })
                .sum();
            let sign = if area < 0.0 { -1.0 } else { 1.0 };
            for i in 0..verts.len() {
                let (a, b) = (verts[i], verts[(i + 1) % verts.len()]);
                let e = [b[0] - a[0], b[1] - a[1]];
                let len = e[0].hypot(e[1]);
                if len == 0.0 {
                    continue;
                }
                let n = [sign * e[1] / len, -sign * e[0] / len];
                arrow(
                    &mut body,
                    &win,
                    [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0],
                    n,
                );
            }
        }
        Geometry::Points(points) => {
            let pts: Vec<[f64; 2]> = points.iter().map(|p| pair(p)).collect();
            let win = Window::around(&pts);
            for &p in &pts {
                let (x, y) = win.to_canvas(p);
                writeln!(
                    body,
                    r##"  <circle class="point" cx="{x:.3}" cy="{y:.3}" r="4" fill="#2c3e50"/>"##
                )
                .unwrap();
            }
        }
    };

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    )
    .unwrap();
    writeln!(
        out,
        r##"  <defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M 0 0 L 10 5 L 0 10 z" fill="#c0392b"/></marker></defs>"##
    )
    .unwrap();
    writeln!(
        out,
        r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##
    )
    .unwrap();
    out.push_str(&body);
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
