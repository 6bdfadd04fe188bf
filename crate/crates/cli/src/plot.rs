//! Minimal SVG line plots: a framed 800×500 canvas with one polyline per
//! curve, axis extents printed at the corners and a legend top-left.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub struct Curve<'a> {
    pub label: &'a str,
    pub y: &'a [f64],
}

pub fn svg(title: &str, x: &[f64], curves: &[Curve<'_>]) -> String {
    let (x_lo, x_hi) = extent(x.iter().copied());
    let (mut y_lo, mut y_hi) = extent(curves.iter().flat_map(|c| c.y.iter().copied()));
    if (y_hi - y_lo).abs() < f64::EPSILON {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    let sx = |v: f64| MARGIN + (v - x_lo) / (x_hi - x_lo).max(f64::MIN_POSITIVE) * (WIDTH - 2.0 * MARGIN);
    let sy = |v: f64| HEIGHT - MARGIN - (v - y_lo) / (y_hi - y_lo) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#);
    let _ = writeln!(s, r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#, WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    let _ = writeln!(s, r#"<text x="{}" y="30" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#, WIDTH / 2.0, escape(title));
    if y_lo < 0.0 && y_hi > 0.0 {
        let _ = writeln!(s, r##"<line x1="{MARGIN}" x2="{}" y1="{y0:.2}" y2="{y0:.2}" stroke="#999" stroke-dasharray="4 4"/>"##, WIDTH - MARGIN, y0 = sy(0.0));
    }
    for (label, x_at, y_at, anchor) in [
        (format!("{x_lo:.3}"), MARGIN, HEIGHT - MARGIN + 18.0, "start"),
        (format!("{x_hi:.3}"), WIDTH - MARGIN, HEIGHT - MARGIN + 18.0, "end"),
        (format!("{y_lo:.3e}"), MARGIN - 4.0, HEIGHT - MARGIN, "end"),
        (format!("{y_hi:.3e}"), MARGIN - 4.0, MARGIN + 10.0, "end"),
    ] {
        let _ = writeln!(s, r#"<text x="{x_at}" y="{y_at}" text-anchor="{anchor}" font-family="sans-serif" font-size="11">{label}</text>"#);
    }
    for (i, c) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = x.iter().zip(c.y).map(|(&a, &b)| format!("{:.2},{:.2}", sx(a), sy(b))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        let ly = MARGIN + 20.0 + 18.0 * i as f64;
        let _ = writeln!(s, r#"<line x1="{}" x2="{}" y1="{ly}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, MARGIN + 10.0, MARGIN + 35.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#, MARGIN + 40.0, ly + 4.0, escape(c.label));
    }
    s.push_str("</svg>\n");
    s
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_polyline_per_curve() {
        let x = [0.0, 1.0, 2.0];
        let out = svg("t <1>", &x, &[Curve { label: "a", y: &[0.0, 1.0, 0.0] }, Curve { label: "b", y: &[1.0, 0.0, -1.0] }]);
        assert_eq!(out.matches("<polyline").count(), 2);
        assert!(out.contains("t &lt;1&gt;"));
        assert!(out.ends_with("</svg>\n"));
    }
}
