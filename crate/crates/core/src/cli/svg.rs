//! Static SVG sketch of a node set and the zero sets of factor curves.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::geometry::Node;
use crate::poly::Factor;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const GRID: usize = 160;

fn to_f64(p: &Node) -> (f64, f64) {
    (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0))
}

fn factor_value(f: &Factor, x: f64, y: f64) -> f64 {
    let c: Vec<f64> = match f {
        Factor::Line(l) => l.coeffs().iter().map(|v| v.to_f64().unwrap_or(0.0)).collect(),
        Factor::Conic(q) => q.coeffs().iter().map(|v| v.to_f64().unwrap_or(0.0)).collect(),
    };
    match f {
        Factor::Line(_) => c[0] * x + c[1] * y + c[2],
        Factor::Conic(_) => c[0] * x * x + c[1] * x * y + c[2] * y * y + c[3] * x + c[4] * y + c[5],
    }
}

/// Renders nodes (the distinguished one in red) and every factor's zero set,
/// sampled on a fixed grid.
pub fn render(nodes: &[Node], distinguished: Option<usize>, factors: &[Factor]) -> String {
    let pts: Vec<(f64, f64)> = nodes.iter().map(to_f64).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let pad = 0.15 * (x1 - x0).max(y1 - y0);
    let (x0, x1, y0, y1) = (x0 - pad, x1 + pad, y0 - pad, y1 + pad);
    let span = (x1 - x0).max(y1 - y0);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let sx = |x: f64| MARGIN + (x - x0) * scale;
    let sy = |y: f64| SIZE - MARGIN - (y - y0) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let colors = ["#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];
    let step = span / GRID as f64;
    for (k, f) in factors.iter().enumerate() {
        let color = colors[k % colors.len()];
        let _ = writeln!(out, r#"<g fill="{color}">"#);
        for i in 0..GRID {
            for j in 0..GRID {
                let (x, y) = (x0 + i as f64 * step, y0 + j as f64 * step);
                let corners = [
                    factor_value(f, x, y),
                    factor_value(f, x + step, y),
                    factor_value(f, x, y + step),
                    factor_value(f, x + step, y + step),
                ];
                let lo = corners.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = corners.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                if lo <= 0.0 && hi >= 0.0 {
                    let _ = writeln!(
                        out,
                        r#"<rect x="{:.2}" y="{:.2}" width="1.5" height="1.5"/>"#,
                        sx(x + step / 2.0),
                        sy(y + step / 2.0)
                    );
                }
            }
        }
        let _ = writeln!(out, "</g>");
    }
    for (k, &(x, y)) in pts.iter().enumerate() {
        let (fill, r) = if Some(k) == distinguished {
            ("#d62728", 6.0)
        } else {
            ("#000000", 4.0)
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}"/>"#,
            sx(x),
            sy(y)
        );
    }
    out.push_str("</svg>\n");
    out
}
