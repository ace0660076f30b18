//! Self-contained SVG heatmaps.
//!
//! Each panel draws one rectangle per lattice point. Rectangles carry the
//! sampled coordinates and exact value in `data-x`, `data-y` and
//! `data-value` attributes so the plot can be checked numerically.

use std::fmt::Write;

use crate::functions::sig17;
use crate::grid::PlaneBox;

/// A scalar field sampled row-major on an `nx × ny` lattice.
pub struct Panel<'a> {
    pub title: &'a str,
    pub xs: &'a [f64],
    pub ys: &'a [f64],
    /// `values[j * nx + i]` belongs to `(xs[i], ys[j])`.
    pub values: &'a [f64],
}

pub enum Palette {
    /// Linear gray from the panel minimum (black) to maximum (white).
    Gray,
    /// `-1`, `0`, `+1` labels.
    Labels,
}

const PANEL_PX: usize = 360;
const MARGIN: usize = 50;
const GAP: usize = 40;

fn label_color(v: f64) -> &'static str {
    if v > 0.0 {
        "#d9822b"
    } else if v < 0.0 {
        "#3b6fb6"
    } else {
        "#7f7f7f"
    }
}

fn gray(v: f64, lo: f64, hi: f64) -> String {
    let level = if hi > lo {
        (255.0 * (v - lo) / (hi - lo)).round() as u8
    } else {
        128
    };
    format!("rgb({level},{level},{level})")
}

fn fmt_num(v: f64) -> String {
    crate::number::fmt_real(v)
}

pub fn render(title: &str, bounds: &PlaneBox, panels: &[Panel<'_>], palette: Palette) -> String {
    let nx = panels.first().map_or(1, |p| p.xs.len());
    let ny = panels.first().map_or(1, |p| p.ys.len());
    let cell = (PANEL_PX / nx.max(ny)).max(1);
    let (pw, ph) = (nx * cell, ny * cell);
    let width = 2 * MARGIN + panels.len() * pw + panels.len().saturating_sub(1) * GAP;
    let height = ph + 2 * MARGIN + 30;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(
        s,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );

    for (k, p) in panels.iter().enumerate() {
        let ox = MARGIN + k * (pw + GAP);
        let oy = MARGIN;
        let (lo, hi) = p
            .values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                (a.min(v), b.max(v))
            });
        let _ = writeln!(
            s,
            r#"<g id="panel-{}" transform="translate({ox},{oy})" shape-rendering="crispEdges">"#,
            escape(p.title)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="-10" text-anchor="middle">{}</text>"#,
            pw / 2,
            escape(p.title)
        );
        for (j, &y) in p.ys.iter().enumerate() {
            // y grows upwards
            let ry = (ny - 1 - j) * cell;
            for (i, &x) in p.xs.iter().enumerate() {
                let v = p.values[j * nx + i];
                let fill = match palette {
                    Palette::Gray => gray(v, lo, hi),
                    Palette::Labels => label_color(v).to_string(),
                };
                let _ = writeln!(
                    s,
                    r#"<rect x="{}" y="{ry}" width="{cell}" height="{cell}" fill="{fill}" data-x="{}" data-y="{}" data-value="{}"/>"#,
                    i * cell,
                    sig17(x),
                    sig17(y),
                    sig17(v)
                );
            }
        }
        // axes
        let _ = writeln!(
            s,
            r#"<rect x="0" y="0" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="0" y="{}">{}</text>"#,
            ph + 14,
            fmt_num(bounds.x_min)
        );
        let _ = writeln!(
            s,
            r#"<text x="{pw}" y="{}" text-anchor="end">{}</text>"#,
            ph + 14,
            fmt_num(bounds.x_max)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">x</text>"#,
            pw / 2,
            ph + 14
        );
        let _ = writeln!(
            s,
            r#"<text x="-4" y="{ph}" text-anchor="end">{}</text>"#,
            fmt_num(bounds.y_min)
        );
        let _ = writeln!(
            s,
            r#"<text x="-4" y="10" text-anchor="end">{}</text>"#,
            fmt_num(bounds.y_max)
        );
        let _ = writeln!(
            s,
            r#"<text x="-4" y="{}" text-anchor="end">y</text>"#,
            ph / 2
        );
        let legend = match palette {
            Palette::Gray => format!("min {} (black), max {} (white)", fmt_num(lo), fmt_num(hi)),
            Palette::Labels => "-1 blue, 0 gray, +1 orange".to_string(),
        };
        let _ = writeln!(
            s,
            r#"<text x="0" y="{}">{}</text>"#,
            ph + 32,
            escape(&legend)
        );
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</svg>");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
