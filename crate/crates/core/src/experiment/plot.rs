//! Dependency-free SVG convergence plots with a log10 error axis.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::iteration::IterationTrace;
use crate::tolerances::PLOT_FLOOR;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotOptions {
    pub title: String,
    /// Horizontal dashed lines, e.g. the singular values of `X_*`.
    pub guide_lines: Vec<f64>,
    /// Values below this are drawn at the floor.
    pub floor: f64,
    pub width: f64,
    pub height: f64,
}

impl Default for PlotOptions {
    fn default() -> Self {
        Self {
            title: String::new(),
            guide_lines: Vec::new(),
            floor: PLOT_FLOOR,
            width: 820.0,
            height: 500.0,
        }
    }
}

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;

const SERIES: [(&str, &str); 3] = [
    ("err_total", "#1f77b4"),
    ("err_tangent", "#2ca02c"),
    ("err_normal", "#d62728"),
];

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders err_total, err_tangent and err_normal against `k`.
pub fn render_svg(trace: &IterationTrace, opts: &PlotOptions) -> String {
    let series: Vec<Vec<(f64, f64)>> = vec![
        trace.records.iter().map(|r| (r.k as f64, r.err_total)).collect(),
        trace.records.iter().map(|r| (r.k as f64, r.err_tangent)).collect(),
        trace.records.iter().map(|r| (r.k as f64, r.err_normal)).collect(),
    ];
    let log = |y: f64| if y.is_finite() { y.max(opts.floor).log10() } else { opts.floor.log10() };

    let mut logs: Vec<f64> = series.iter().flatten().map(|&(_, y)| log(y)).collect();
    logs.extend(opts.guide_lines.iter().map(|&g| log(g)));
    let mut y_lo = logs.iter().copied().fold(f64::INFINITY, f64::min).floor();
    let mut y_hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max).ceil();
    if !(y_lo.is_finite() && y_hi.is_finite()) {
        (y_lo, y_hi) = (opts.floor.log10(), 0.0);
    }
    if y_hi <= y_lo {
        y_hi = y_lo + 1.0;
    }
    let k_max = trace.records.last().map_or(0, |r| r.k).max(1) as f64;

    let plot_w = opts.width - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = opts.height - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |k: f64| MARGIN_LEFT + k / k_max * plot_w;
    let py = |ly: f64| MARGIN_TOP + (y_hi - ly) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = opts.width,
        h = opts.height
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if !opts.title.is_empty() {
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            escape(&opts.title)
        );
    }

    // Axes and decade ticks.
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w:.1}" height="{plot_h:.1}" fill="none" stroke="black"/>"#
    );
    let decades = (y_hi - y_lo) as i64;
    let step = (decades / 10).max(1);
    let mut e = y_lo as i64;
    while e <= y_hi as i64 {
        let y = py(e as f64);
        let _ = writeln!(
            svg,
            r##"<line x1="{MARGIN_LEFT}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#dddddd"/>"##,
            MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">1e{e}</text>"#,
            MARGIN_LEFT - 6.0,
            y + 4.0
        );
        e += step;
    }
    let k_ticks = 5;
    for i in 0..=k_ticks {
        let k = (k_max * i as f64 / k_ticks as f64).round();
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            px(k),
            MARGIN_TOP + plot_h + 18.0,
            k
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">iteration k</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        opts.height - 10.0
    );

    for (j, &g) in opts.guide_lines.iter().enumerate() {
        let y = py(log(g));
        let _ = writeln!(
            svg,
            r##"<line class="guide" x1="{MARGIN_LEFT}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#888888" stroke-dasharray="6,4"/>"##,
            MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.1}" y="{:.1}" fill="#555555">σ{}</text>"##,
            MARGIN_LEFT + plot_w + 4.0,
            y + 4.0,
            j + 1
        );
    }

    for (points, (name, color)) in series.iter().zip(SERIES) {
        if points.len() == 1 {
            let (k, v) = points[0];
            let _ = writeln!(
                svg,
                r#"<circle class="{name}" cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                px(k),
                py(log(v))
            );
        } else {
            let coords: Vec<String> = points
                .iter()
                .map(|&(k, v)| format!("{:.2},{:.2}", px(k), py(log(v))))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline class="{name}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                coords.join(" ")
            );
        }
    }

    for (i, (name, color)) in SERIES.iter().enumerate() {
        let y = MARGIN_TOP + 12.0 + 18.0 * i as f64;
        let x = opts.width - MARGIN_RIGHT + 40.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="{color}" stroke-width="2"/>"#,
            x + 18.0
        );
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}">{name}</text>"#, x + 22.0, y + 4.0);
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn emit_plot(trace: &IterationTrace, path: &Path, opts: &PlotOptions) -> Result<()> {
    std::fs::write(path, render_svg(trace, opts))?;
    Ok(())
}
