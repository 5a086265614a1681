//! SVG projections of complex trajectories onto three real planes.

use std::fmt::Write;

use holofol::tracer::TraceResult;

const PANEL: f64 = 320.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct Projection {
    title: &'static str,
    x_label: &'static str,
    y_label: &'static str,
    map: fn(&holofol::tracer::Sample) -> (f64, f64),
}

const PROJECTIONS: [Projection; 3] = [
    Projection {
        title: "moduli",
        x_label: "|x|",
        y_label: "|y|",
        map: |s| (s.z.x.norm(), s.z.y.norm()),
    },
    Projection {
        title: "x plane",
        x_label: "Re x",
        y_label: "Im x",
        map: |s| (s.z.x.re, s.z.x.im),
    },
    Projection {
        title: "y plane",
        x_label: "Re y",
        y_label: "Im y",
        map: |s| (s.z.y.re, s.z.y.im),
    },
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Bounding box of the finite points, padded and never degenerate.
fn bounds(points: impl Iterator<Item = (f64, f64)>) -> (f64, f64, f64, f64) {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in points.filter(|(x, y)| x.is_finite() && y.is_finite()) {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        return (-1.0, 1.0, -1.0, 1.0);
    }
    let pad = |lo: f64, hi: f64| {
        let w = (hi - lo).max(1e-12 * lo.abs().max(hi.abs())).max(1e-300);
        (lo - 0.05 * w, hi + 0.05 * w)
    };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    (x0, x1, y0, y1)
}

/// Renders every trace in three panels; `command_line` is embedded as
/// metadata.
pub fn render_svg(traces: &[TraceResult], command_line: &str) -> String {
    let width = 3.0 * (PANEL + 2.0 * MARGIN);
    let height = PANEL + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, "<metadata>{}</metadata>", escape(command_line));
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, proj) in PROJECTIONS.iter().enumerate() {
        let ox = i as f64 * (PANEL + 2.0 * MARGIN) + MARGIN;
        let oy = MARGIN;
        let all = traces.iter().flat_map(|t| t.samples.iter().map(proj.map));
        let (x0, x1, y0, y1) = bounds(all);
        let sx = |x: f64| ox + (x - x0) / (x1 - x0) * PANEL;
        let sy = |y: f64| oy + PANEL - (y - y0) / (y1 - y0) * PANEL;
        let _ = writeln!(out, r#"<g class="panel" id="panel-{i}">"#);
        let _ = writeln!(
            out,
            r#"<rect x="{ox}" y="{oy}" width="{PANEL}" height="{PANEL}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            ox + PANEL / 2.0,
            oy - 12.0,
            escape(proj.title)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            ox + PANEL / 2.0,
            oy + PANEL + 28.0,
            escape(proj.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" transform="rotate(-90 {} {})">{}</text>"#,
            ox - 24.0,
            oy + PANEL / 2.0,
            ox - 24.0,
            oy + PANEL / 2.0,
            escape(proj.y_label)
        );
        for (label, x, y, anchor) in [
            (format!("{x0:.3e}"), ox, oy + PANEL + 12.0, "start"),
            (format!("{x1:.3e}"), ox + PANEL, oy + PANEL + 12.0, "end"),
        ] {
            let _ = writeln!(
                out,
                r#"<text x="{x}" y="{y}" text-anchor="{anchor}" font-size="9">{label}</text>"#
            );
        }
        for (label, y) in [(format!("{y0:.3e}"), oy + PANEL), (format!("{y1:.3e}"), oy + 9.0)] {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{y}" text-anchor="end" font-size="9">{label}</text>"#,
                ox - 2.0
            );
        }
        for (j, tr) in traces.iter().enumerate() {
            let pts: Vec<String> = tr
                .samples
                .iter()
                .map(proj.map)
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
                .collect();
            let color = COLORS[j % COLORS.len()];
            if let Some(first) = pts.first() {
                let (cx, cy) = first.split_once(',').unwrap();
                let _ = writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="2.5" fill="{color}"/>"#);
            }
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#,
                pts.join(" ")
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}
