//! CSV and SVG renderings of profiles.

use std::fmt::Write;

use wordstat::{PowerWitness, Profile};

pub const SIGMA_HEADER: &str = "n,sigma,sigma_over_n2,sigma_over_n3";
pub const LAMBDA_HEADER: &str = "n,lambda,lambda_over_n3,witness_eta_len,witness_exponent,witness_pos";

/// 13 significant digits, scientific notation.
pub fn float(x: f64) -> String {
    format!("{x:.12e}")
}

pub fn sigma_csv(profile: &Profile) -> String {
    let mut out = String::from(SIGMA_HEADER);
    out.push('\n');
    let (r2, r3) = (profile.normalized(2), profile.normalized(3));
    for (i, (n, v)) in profile.iter().enumerate() {
        let _ = writeln!(out, "{n},{v},{},{}", float(r2[i]), float(r3[i]));
    }
    out
}

pub fn lambda_csv(profile: &Profile, witnesses: &[PowerWitness]) -> String {
    let mut out = String::from(LAMBDA_HEADER);
    out.push('\n');
    let r3 = profile.normalized(3);
    for (i, ((n, v), w)) in profile.iter().zip(witnesses).enumerate() {
        let _ = writeln!(
            out,
            "{n},{v},{},{},{},{}",
            float(r3[i]),
            w.eta_length,
            w.exponent,
            w.position
        );
    }
    out
}

pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Line chart with logarithmic axes, one polyline per series. Points with
/// non-positive coordinates are dropped.
pub fn svg_chart(title: &str, x_label: &str, series: &[Series]) -> String {
    let pts = || {
        series
            .iter()
            .flat_map(|s| s.points.iter())
            .filter(|(x, y)| *x > 0.0 && *y > 0.0)
    };
    let bounds = |f: fn(&(f64, f64)) -> f64| {
        let (lo, hi) = pts().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v.log10()), hi.max(v.log10()))
        });
        if lo.is_finite() {
            (lo, if hi > lo { hi } else { lo + 1.0 })
        } else {
            (0.0, 1.0)
        }
    };
    let (x0, x1) = bounds(|p| p.0);
    let (y0, y1) = bounds(|p| p.1);
    let px = |x: f64| MARGIN + (x.log10() - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y.log10() - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" stroke="black" fill="none"/>"#
    );
    for (label, value, x, y, anchor) in [
        ("x", format!("10^{x0:.2}"), left, bottom + 18.0, "start"),
        ("x", format!("10^{x1:.2}"), right, bottom + 18.0, "end"),
        ("y", format!("10^{y0:.2}"), left - 6.0, bottom, "end"),
        ("y", format!("10^{y1:.2}"), left - 6.0, top + 4.0, "end"),
    ] {
        let _ = writeln!(
            out,
            r#"<text class="tick-{label}" x="{x:.1}" y="{y:.1}" font-family="sans-serif" font-size="11" text-anchor="{anchor}">{value}</text>"#
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{} (log scale)</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0,
        escape(x_label)
    );
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| *x > 0.0 && *y > 0.0)
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" fill="{color}">{}</text>"#,
            right - 150.0,
            top + 16.0 * (i as f64 + 1.0),
            escape(s.name)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
