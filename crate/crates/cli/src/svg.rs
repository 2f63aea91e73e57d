//! Scatter plots of point sets.

use std::fmt::Write;

use superring::spectrum::RPoint;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Plots the first two coordinates; one-dimensional points sit on the horizontal axis.
pub fn scatter(sets: &[(String, Vec<RPoint>)]) -> String {
    let coords = |p: &RPoint| (p.coords.first().copied().unwrap_or(0.0), p.coords.get(1).copied().unwrap_or(0.0));
    let all: Vec<(f64, f64)> = sets.iter().flat_map(|(_, ps)| ps.iter().map(coords)).collect();
    let extent = all.iter().fold(1e-9f64, |m, &(x, y)| m.max(x.abs()).max(y.abs())) * 1.1;
    let map = |v: f64| MARGIN + (v + extent) / (2.0 * extent) * (SIZE - 2.0 * MARGIN);
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let (mid, lo, hi) = (map(0.0), MARGIN, SIZE - MARGIN);
    let _ = writeln!(out, r##"<line x1="{lo}" y1="{mid}" x2="{hi}" y2="{mid}" stroke="#ccc"/>"##);
    let _ = writeln!(out, r##"<line x1="{mid}" y1="{lo}" x2="{mid}" y2="{hi}" stroke="#ccc"/>"##);
    for (k, (name, points)) in sets.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let _ = writeln!(out, r#"<g fill="{color}"><title>{name}</title>"#);
        for p in points {
            let (x, y) = coords(p);
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, map(x), SIZE - map(y));
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}
