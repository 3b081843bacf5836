//! Static SVG line plots. Output depends only on the curves, so identical
//! inputs give identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use mmwave_link::coverage::CurveResult;

use crate::csv::write_atomic;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotStyle {
    Linear,
    SemilogY,
}

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 84.0;
const RIGHT: f64 = 220.0;
const TOP: f64 = 44.0;
const BOTTOM: f64 = 64.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Round-number tick positions covering [lo, hi].
fn linear_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e5 || v.abs() < 1e-3 {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Padded data range; a degenerate range is widened so flat curves stay
/// inside the frame.
fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.04 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
        (lo - pad, hi + pad)
    }
}

pub fn render_svg(curves: &[CurveResult], title: &str, style: PlotStyle) -> Result<String, CliError> {
    if curves.is_empty() {
        return Err(CliError::Usage("a plot needs at least one curve".into()));
    }
    let ymap = |y: f64| match style {
        PlotStyle::Linear => Some(y),
        PlotStyle::SemilogY => (y > 0.0).then(|| y.log10()),
    };
    let mut xr = (f64::INFINITY, f64::NEG_INFINITY);
    let mut yr = (f64::INFINITY, f64::NEG_INFINITY);
    for c in curves {
        for &(x, y) in &c.points {
            xr = (xr.0.min(x), xr.1.max(x));
            if let Some(v) = ymap(y) {
                yr = (yr.0.min(v), yr.1.max(v));
            }
        }
    }
    if !xr.0.is_finite() {
        xr = (0.0, 1.0);
    }
    if !yr.0.is_finite() {
        yr = match style {
            PlotStyle::Linear => (0.0, 1.0),
            PlotStyle::SemilogY => (-6.0, 0.0),
        };
    }
    let (x0, x1) = padded(xr.0, xr.1);
    let (y0, y1) = match style {
        PlotStyle::Linear => padded(yr.0, yr.1),
        PlotStyle::SemilogY => {
            let lo = yr.0.floor();
            let hi = yr.1.ceil();
            if hi > lo {
                (lo, hi)
            } else {
                (lo - 1.0, hi + 1.0)
            }
        }
    };
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let py = |v: f64| TOP + (y1 - v) / (y1 - y0) * ph;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + pw / 2.0,
        escape(title)
    )
    .unwrap();

    // grid and tick labels
    s.push_str("<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n");
    let xticks = linear_ticks(x0, x1);
    let yticks: Vec<(f64, String)> = match style {
        PlotStyle::Linear => linear_ticks(y0, y1).into_iter().map(|v| (v, tick_label(v))).collect(),
        PlotStyle::SemilogY => {
            let stride = (((y1 - y0) / 8.0).ceil() as i64).max(1);
            (y0 as i64..=y1 as i64)
                .filter(|e| (e - y0 as i64) % stride == 0)
                .map(|e| (e as f64, format!("1e{e}")))
                .collect()
        }
    };
    for &x in &xticks {
        writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}"/>"#,
            px(x),
            TOP,
            TOP + ph
        )
        .unwrap();
    }
    for (v, _) in &yticks {
        writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{2:.2}" y2="{1:.2}"/>"#,
            LEFT,
            py(*v),
            LEFT + pw
        )
        .unwrap();
    }
    s.push_str("</g>\n");
    writeln!(
        s,
        r#"<rect class="frame" x="{LEFT}" y="{TOP}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    for &x in &xticks {
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            px(x),
            TOP + ph + 18.0,
            tick_label(x)
        )
        .unwrap();
    }
    for (v, label) in &yticks {
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            py(*v) + 4.0,
            label
        )
        .unwrap();
    }
    let first = &curves[0];
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{} [{}]</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 18.0,
        escape(&first.x_name),
        escape(&first.x_unit)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="18" y="{0:.2}" text-anchor="middle" transform="rotate(-90 18 {0:.2})">{1} [{2}]{3}</text>"#,
        TOP + ph / 2.0,
        escape(&first.y_name),
        escape(&first.y_unit),
        if style == PlotStyle::SemilogY { " (log)" } else { "" }
    )
    .unwrap();

    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        writeln!(s, r#"<g class="series" data-name="{}">"#, escape(&c.name)).unwrap();
        // a point that cannot be drawn on the axis breaks the line
        let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for &(x, y) in &c.points {
            match ymap(y) {
                Some(v) => segments.last_mut().unwrap().push((px(x), py(v))),
                None => segments.push(Vec::new()),
            }
        }
        let dashed = if c.ci95.is_some() {
            r#" stroke-dasharray="6 3""#
        } else {
            ""
        };
        for seg in segments.iter().filter(|seg| !seg.is_empty()) {
            let pts: Vec<String> = seg.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2"{dashed} points="{}"/>"#,
                pts.join(" ")
            )
            .unwrap();
        }
        if c.ci95.is_some() || c.labels.is_some() {
            for (cx, cy) in segments.iter().flatten() {
                writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="3" fill="{color}"/>"#).unwrap();
            }
        }
        if let Some(labels) = &c.labels {
            for (&(x, y), label) in c.points.iter().zip(labels) {
                if let Some(v) = ymap(y) {
                    writeln!(
                        s,
                        r#"<text x="{:.2}" y="{:.2}" font-size="10">{}</text>"#,
                        px(x) + 5.0,
                        py(v) - 5.0,
                        escape(label)
                    )
                    .unwrap();
                }
            }
        }
        s.push_str("</g>\n");
        let ly = TOP + 12.0 + 20.0 * i as f64;
        let lx = LEFT + pw + 14.0;
        writeln!(
            s,
            r#"<line class="legend" x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"{dashed}/>"#,
            lx + 24.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 30.0,
            ly + 4.0,
            escape(&c.name)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_plot(curves: &[CurveResult], path: &Path, title: &str, style: PlotStyle) -> Result<(), CliError> {
    write_atomic(path, render_svg(curves, title, style)?.as_bytes())
}
