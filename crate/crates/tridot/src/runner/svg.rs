//! Self-contained SVG line plot of ℘(GHZ) against time, one polyline per
//! trajectory. No scripts, no external references; fixed 960×600 view box.

use super::{RunError, Trajectory};
use std::fmt::Write as _;
use std::path::Path;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 190.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;

const SERIES_COLORS: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

fn fmt_coord(x: f64) -> String {
    format!("{x:.2}")
}

fn fmt_tick(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() {
        "0".into()
    } else {
        s.into()
    }
}

/// Renders the plot; the y axis is pinned to the probability range [0, 1].
pub fn render_svg(trajs: &[Trajectory]) -> String {
    assert!(!trajs.is_empty(), "refusing to plot an empty trajectory set");
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    let t_min = trajs
        .iter()
        .filter_map(|t| t.rows.first())
        .map(|r| r.t)
        .fold(f64::INFINITY, f64::min);
    let t_max = trajs
        .iter()
        .filter_map(|t| t.rows.last())
        .map(|r| r.t)
        .fold(f64::NEG_INFINITY, f64::max);
    let t_span = (t_max - t_min).max(f64::MIN_POSITIVE);

    let x_of = |t: f64| MARGIN_LEFT + (t - t_min) / t_span * plot_w;
    let y_of = |p: f64| MARGIN_TOP + (1.0 - p) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r##"  <rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        s,
        r##"  <rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#333333" stroke-width="1"/>"##
    );

    // y grid and ticks at 0, 0.25, …, 1
    for k in 0..=4 {
        let p = k as f64 * 0.25;
        let y = y_of(p);
        let _ = writeln!(
            s,
            r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#cccccc" stroke-width="0.5" stroke-dasharray="3,4"/>"##,
            fmt_coord(MARGIN_LEFT),
            fmt_coord(y),
            fmt_coord(MARGIN_LEFT + plot_w),
            fmt_coord(y)
        );
        let _ = writeln!(
            s,
            r##"  <text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="13" fill="#000000">{}</text>"##,
            fmt_coord(MARGIN_LEFT - 8.0),
            fmt_coord(y + 4.0),
            fmt_tick(p)
        );
    }

    // x ticks
    for k in 0..=5 {
        let t = t_min + t_span * k as f64 / 5.0;
        let x = x_of(t);
        let _ = writeln!(
            s,
            r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#333333" stroke-width="1"/>"##,
            fmt_coord(x),
            fmt_coord(MARGIN_TOP + plot_h),
            fmt_coord(x),
            fmt_coord(MARGIN_TOP + plot_h + 6.0)
        );
        let _ = writeln!(
            s,
            r##"  <text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13" fill="#000000">{}</text>"##,
            fmt_coord(x),
            fmt_coord(MARGIN_TOP + plot_h + 22.0),
            fmt_tick(t)
        );
    }

    // axis labels
    let _ = writeln!(
        s,
        r##"  <text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="16" fill="#000000">t (fs)</text>"##,
        fmt_coord(MARGIN_LEFT + plot_w / 2.0),
        fmt_coord(HEIGHT - 14.0)
    );
    let _ = writeln!(
        s,
        r##"  <text x="20" y="{}" text-anchor="middle" font-family="sans-serif" font-size="16" fill="#000000" transform="rotate(-90 20 {})">&#8472;(GHZ)</text>"##,
        fmt_coord(MARGIN_TOP + plot_h / 2.0),
        fmt_coord(MARGIN_TOP + plot_h / 2.0)
    );

    // one polyline per trajectory
    for (idx, traj) in trajs.iter().enumerate() {
        let color = SERIES_COLORS[idx % SERIES_COLORS.len()];
        let points: Vec<String> = traj
            .rows
            .iter()
            .map(|row| format!("{},{}", fmt_coord(x_of(row.t)), fmt_coord(y_of(row.p_ghz))))
            .collect();
        let _ = writeln!(
            s,
            r#"  <polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
    }

    // legend keyed by the swept parameter
    let legend_x = MARGIN_LEFT + plot_w + 14.0;
    for (idx, traj) in trajs.iter().enumerate() {
        let color = SERIES_COLORS[idx % SERIES_COLORS.len()];
        let y = MARGIN_TOP + 16.0 + idx as f64 * 22.0;
        let _ = writeln!(
            s,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2"/>"#,
            fmt_coord(legend_x),
            fmt_coord(y - 4.0),
            fmt_coord(legend_x + 24.0),
            fmt_coord(y - 4.0)
        );
        let _ = writeln!(
            s,
            r##"  <text x="{}" y="{}" font-family="sans-serif" font-size="13" fill="#000000">{}</text>"##,
            fmt_coord(legend_x + 30.0),
            fmt_coord(y),
            traj.label()
        );
    }

    s.push_str("</svg>\n");
    s
}

/// Writes the multi-trajectory plot as a standalone SVG file.
pub fn emit_svg(trajs: &[Trajectory], path: &Path) -> Result<(), RunError> {
    std::fs::write(path, render_svg(trajs)).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })
}
