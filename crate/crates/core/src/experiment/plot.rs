//! SVG line chart of a consistency report.
//!
//! The chart is rendered from a parsed report CSV only. Output is a pure
//! function of the CSV contents.

use std::fmt::Write as _;

use super::report::ConsistencyReport;
use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 70.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 90.0;
const RHO_COLOR: &str = "#1f77b4";
const EXTREMA_COLOR: &str = "#ff7f0e";

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Parses report CSV text and renders it.
pub fn plot_csv(csv: &str) -> Result<String> {
    plot_svg(&ConsistencyReport::read_csv(csv.as_bytes())?)
}

/// `rho` (left axis, −1..1) and `extrema_pct` (right axis, 0..100) against
/// `N` on a log axis. Degenerate rows drop out of the `rho` series and are
/// listed in the caption.
pub fn plot_svg(report: &ConsistencyReport) -> Result<String> {
    if report.rows.len() < 2 {
        return Err(Error::EmptyReport);
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let log_min = (report.rows[0].len as f64).log10();
    let log_max = (report.rows[report.rows.len() - 1].len as f64).log10();
    let span = (log_max - log_min).max(f64::EPSILON);
    let x_of = |n: usize| LEFT + ((n as f64).log10() - log_min) / span * plot_w;
    let y_rho = |r: f64| TOP + (1.0 - (r.clamp(-1.0, 1.0) + 1.0) / 2.0) * plot_h;
    let y_pct = |p: f64| TOP + (1.0 - p.clamp(0.0, 100.0) / 100.0) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    let title = format!(
        "{} consistency: {}",
        report.meta_value("operator").unwrap_or("operator"),
        report
            .meta_value("mappings")
            .unwrap_or("?")
            .replace(',', " vs ")
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(&title)
    );

    // Axes frame.
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="black"/>"#
    );

    // Left axis: rho.
    for tick in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let y = y_rho(tick);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            LEFT,
            LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{tick:.1}</text>"#,
            LEFT - 6.0,
            y + 4.0
        );
    }
    // Right axis: extrema percentage.
    for tick in [0.0, 25.0, 50.0, 75.0, 100.0] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="start">{tick:.0}</text>"#,
            LEFT + plot_w + 6.0,
            y_pct(tick) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" transform="rotate(-90 18 {:.2})" text-anchor="middle" fill="{RHO_COLOR}">rho</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" transform="rotate(90 {:.2} {:.2})" text-anchor="middle" fill="{EXTREMA_COLOR}">extrema preserved (%)</text>"#,
        WIDTH - 22.0,
        TOP + plot_h / 2.0,
        WIDTH - 22.0,
        TOP + plot_h / 2.0
    );

    // x ticks: at most ten row lengths, evenly picked.
    let rows = &report.rows;
    let step = rows.len().div_ceil(10);
    for (i, row) in rows.iter().enumerate() {
        if i % step != 0 && i != rows.len() - 1 {
            continue;
        }
        let x = x_of(row.len);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + plot_h + 18.0,
            row.len
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">sequence length N (log scale)</text>"#,
        LEFT + plot_w / 2.0,
        TOP + plot_h + 38.0
    );

    let rho_points: Vec<String> = rows
        .iter()
        .filter_map(|r| {
            r.rho
                .map(|rho| format!("{:.2},{:.2}", x_of(r.len), y_rho(rho)))
        })
        .collect();
    let pct_points: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.2},{:.2}", x_of(r.len), y_pct(r.extrema_pct)))
        .collect();
    for (class, color, points) in [
        ("rho", RHO_COLOR, &rho_points),
        ("extrema_pct", EXTREMA_COLOR, &pct_points),
    ] {
        if points.is_empty() {
            continue;
        }
        let _ = writeln!(
            svg,
            r#"<polyline class="{class}" fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            points.join(" ")
        );
        for p in points.iter() {
            let (x, y) = p.split_once(',').expect("formatted as x,y");
            let _ = writeln!(
                svg,
                r#"<circle class="{class}" cx="{x}" cy="{y}" r="3" fill="{color}"/>"#
            );
        }
    }

    // Legend.
    let ly = HEIGHT - 30.0;
    let _ = writeln!(
        svg,
        r#"<line x1="{LEFT:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{RHO_COLOR}" stroke-width="2"/><text x="{:.2}" y="{:.2}">rho</text>"#,
        LEFT + 20.0,
        LEFT + 26.0,
        ly + 4.0
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{EXTREMA_COLOR}" stroke-width="2"/><text x="{:.2}" y="{:.2}">extrema_pct</text>"#,
        LEFT + 80.0,
        LEFT + 100.0,
        LEFT + 106.0,
        ly + 4.0
    );

    let degenerate = report.degenerate_lengths();
    if !degenerate.is_empty() {
        let list = degenerate
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(
            svg,
            r#"<text class="caption" x="{:.2}" y="{:.2}" font-style="italic">rho omitted (constant profile) at N = {list}</text>"#,
            LEFT + 220.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
