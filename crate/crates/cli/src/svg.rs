// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Minimal static line plot.

use std::fmt::Write as _;

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 60.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// One polyline series with markers, axes and min/max tick labels.
pub fn line_plot(points: &[(f64, f64)], title: &str, x_label: &str, y_label: &str) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if points.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let pad = |lo: f64, hi: f64| if hi - lo < 1e-12 { (lo - 0.5, hi + 0.5) } else { (lo, hi) };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0 - 0.05 * (y1 - y0), y1 + 0.05 * (y1 - y0));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"  <title>{}</title>"#, escape(title));
    let _ = writeln!(s, r#"  <rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"  <g class="axes" stroke="black"><line x1="{m}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{m}" y1="{b}" x2="{m}" y2="{m}"/></g>"#,
        m = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    );
    let _ = writeln!(
        s,
        r#"  <text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        W / 2.0,
        H - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"  <text x="15" y="{}" text-anchor="middle" transform="rotate(-90 15 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(y_label)
    );
    let _ = writeln!(s, r#"  <text x="{}" y="25" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
    for (y, label) in [(y0, y0), (y1, y1)] {
        let _ = writeln!(s, r#"  <text x="{}" y="{:.1}" text-anchor="end">{label:.4}</text>"#, MARGIN - 5.0, sy(y) + 4.0);
    }
    for (x, label) in [(x0, x0), (x1, x1)] {
        let _ = writeln!(s, r#"  <text x="{:.1}" y="{}" text-anchor="middle">{label}</text>"#, sx(x), H - MARGIN + 18.0);
    }
    let coords: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
    let _ = writeln!(s, r#"  <g class="series">"#);
    let _ = writeln!(s, r#"    <polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#, coords.join(" "));
    for &(x, y) in points {
        let _ = writeln!(s, r#"    <circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#, sx(x), sy(y));
    }
    let _ = writeln!(s, "  </g>");
    s.push_str("</svg>\n");
    s
}
