//! Self-contained SVG cobweb diagrams on a 1000 × 1000 canvas.

use std::fmt::Write;

use conjugate_core::analysis::CobwebPath;
use conjugate_core::interval::closed_grid;
use conjugate_core::MapDescriptor;

pub const CANVAS: f64 = 1000.0;
pub const GRAPH_SAMPLES: usize = 1000;
const MARGIN: f64 = 50.0;

/// Square plotting window in map coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    /// The map's domain when bounded, otherwise the span of the path padded by 10%.
    pub fn for_path(map: &MapDescriptor, path: &CobwebPath) -> Self {
        let d = map.domain();
        if d.is_bounded() && d.width() > 0.0 {
            return Window { lo: d.lo, hi: d.hi };
        }
        let (mut lo, mut hi) = path
            .points
            .iter()
            .flat_map(|&(x, y)| [x, y])
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        if !(lo < hi) {
            let c = if lo.is_finite() { lo } else { 0.0 };
            lo = c - 1.0;
            hi = c + 1.0;
        }
        let pad = 0.1 * (hi - lo);
        Window {
            lo: lo - pad,
            hi: hi + pad,
        }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.lo) / (self.hi - self.lo) * (CANVAS - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        CANVAS - self.px(y)
    }
}

fn polyline(out: &mut String, class: &str, points: &[(f64, f64)], w: &Window) {
    let _ = write!(out, r#"  <polyline class="{class}" fill="none" points=""#);
    for (i, &(x, y)) in points.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{:.3},{:.3}", w.px(x), w.py(y));
    }
    out.push_str("\"/>\n");
}

/// Axes, the diagonal, the graph of `map` at 1000 points and the cobweb polyline.
pub fn cobweb_svg(map: &MapDescriptor, path: &CobwebPath) -> String {
    let w = Window::for_path(map, path);
    let graph: Vec<(f64, f64)> = closed_grid(w.lo, w.hi, GRAPH_SAMPLES)
        .into_iter()
        .filter_map(|x| map.eval(x).ok().filter(|y| y.is_finite()).map(|y| (x, y)))
        .collect();
    let (x0, y0) = (w.px(w.lo), w.py(w.lo));
    let (x1, y1) = (w.px(w.hi), w.py(w.hi));

    let mut out = String::new();
    out.push_str(r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    out.push('\n');
    out.push_str(r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 1000 1000" width="1000" height="1000">"#);
    out.push('\n');
    let _ = writeln!(out, "  <title>cobweb of {} from {}</title>", escape(&map.to_string()), path.seed);
    out.push_str("  <rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n");
    out.push_str("  <g stroke=\"black\" stroke-width=\"1.5\">\n");
    let _ = writeln!(out, r#"    <line class="axis" x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y0:.3}"/>"#);
    let _ = writeln!(out, r#"    <line class="axis" x1="{x0:.3}" y1="{y0:.3}" x2="{x0:.3}" y2="{y1:.3}"/>"#);
    out.push_str("  </g>\n");
    let _ = writeln!(
        out,
        r##"  <line class="diagonal" x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="#888888" stroke-dasharray="6 4"/>"##
    );
    let _ = writeln!(out, r#"  <text x="{x0:.3}" y="{:.3}" font-size="18">{}</text>"#, y0 + 25.0, w.lo);
    let _ = writeln!(out, r#"  <text x="{x1:.3}" y="{:.3}" font-size="18" text-anchor="end">{}</text>"#, y0 + 25.0, w.hi);
    out.push_str("  <g stroke=\"#1f4e9c\" stroke-width=\"2\">\n");
    polyline(&mut out, "graph", &graph, &w);
    out.push_str("  </g>\n  <g stroke=\"#c0392b\" stroke-width=\"1\">\n");
    polyline(&mut out, "cobweb", &path.points, &w);
    out.push_str("  </g>\n</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
