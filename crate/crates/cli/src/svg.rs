//! Minimal SVG plots: curves as paths, cusps as dots, vertices as rings,
//! inflections as crosses.

use legendre_core::Vec2;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Debug, Default)]
pub struct Plot {
    pub curves: Vec<Trace>,
    pub cusps: Vec<Vec2<f64>>,
    pub vertices: Vec<Vec2<f64>>,
    pub inflections: Vec<Vec2<f64>>,
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub label: String,
    pub color: &'static str,
    pub points: Vec<Vec2<f64>>,
    pub closed: bool,
}

const MARGIN: f64 = 0.05;
const MARKER: f64 = 0.005;

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Bounding box of all finite points, never degenerate.
fn bounds(plot: &Plot) -> (Vec2<f64>, Vec2<f64>) {
    let all = plot
        .curves
        .iter()
        .flat_map(|c| c.points.iter())
        .chain(&plot.cusps)
        .chain(&plot.vertices)
        .chain(&plot.inflections)
        .filter(|p| p.x.is_finite() && p.y.is_finite());
    let (mut lo, mut hi) = (
        Vec2::new(f64::INFINITY, f64::INFINITY),
        Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in all {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    if !lo.x.is_finite() {
        return (Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0));
    }
    let pad = |a: f64, b: f64| if b - a < 1e-9 { 0.5 } else { 0.0 };
    let (px, py) = (pad(lo.x, hi.x), pad(lo.y, hi.y));
    (
        Vec2::new(lo.x - px, lo.y - py),
        Vec2::new(hi.x + px, hi.y + py),
    )
}

pub fn render(plot: &Plot) -> String {
    let (lo, hi) = bounds(plot);
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let (mx, my) = (w * MARGIN, h * MARGIN);
    let diag = (w * w + h * h).sqrt();
    let r = diag * MARKER;
    let stroke = diag * 0.002;
    // y is flipped so that the plot reads with the usual orientation.
    let at = |p: &Vec2<f64>| format!("{},{}", num(p.x), num(-p.y));
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="640" height="{}">"#,
        num(lo.x - mx),
        num(-hi.y - my),
        num(w + 2.0 * mx),
        num(h + 2.0 * my),
        num((640.0 * (h + 2.0 * my) / (w + 2.0 * mx)).round()),
    );
    for c in &plot.curves {
        let mut d = String::new();
        let mut pen_up = true;
        for p in &c.points {
            if !(p.x.is_finite() && p.y.is_finite()) {
                pen_up = true;
                continue;
            }
            d.push_str(if pen_up { "M" } else { " L" });
            d.push_str(&at(p));
            pen_up = false;
        }
        if c.closed && !d.is_empty() {
            d.push_str(" Z");
        }
        let _ = writeln!(
            s,
            r#"  <path d="{d}" fill="none" stroke="{}" stroke-width="{}"/>"#,
            c.color,
            num(stroke)
        );
    }
    for p in &plot.cusps {
        let _ = writeln!(
            s,
            r#"  <circle cx="{}" cy="{}" r="{}" fill="crimson"/>"#,
            num(p.x),
            num(-p.y),
            num(r)
        );
    }
    for p in &plot.vertices {
        let _ = writeln!(
            s,
            r#"  <circle cx="{}" cy="{}" r="{}" fill="none" stroke="darkgreen" stroke-width="{}"/>"#,
            num(p.x),
            num(-p.y),
            num(r),
            num(stroke)
        );
    }
    for p in &plot.inflections {
        let (a, b) = (Vec2::new(p.x - r, p.y - r), Vec2::new(p.x + r, p.y + r));
        let (c, d) = (Vec2::new(p.x - r, p.y + r), Vec2::new(p.x + r, p.y - r));
        let _ = writeln!(
            s,
            r#"  <path d="M{} L{} M{} L{}" stroke="darkorange" stroke-width="{}"/>"#,
            at(&a),
            at(&b),
            at(&c),
            at(&d),
            num(stroke)
        );
    }
    let size = diag * 0.03;
    let mut y = -hi.y - my + 1.5 * size;
    let x = lo.x - mx + size;
    let mut legend: Vec<(String, &str)> = plot
        .curves
        .iter()
        .map(|c| (c.label.clone(), c.color))
        .collect();
    for (label, color, n) in [
        ("cusp", "crimson", plot.cusps.len()),
        ("vertex", "darkgreen", plot.vertices.len()),
        ("inflection", "darkorange", plot.inflections.len()),
    ] {
        if n > 0 {
            legend.push((format!("{label} ({n})"), color));
        }
    }
    for (label, color) in legend {
        let _ = writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="{}" font-family="sans-serif" fill="{color}">{}</text>"#,
            num(x),
            num(y),
            num(size),
            escape(&label)
        );
        y += 1.3 * size;
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn emit_svg(plot: &Plot, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, render(plot))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_root_with_fitted_view_box() {
        let plot = Plot {
            curves: vec![Trace {
                label: "square <unit>".into(),
                color: "black",
                points: vec![
                    Vec2::new(0.0, 0.0),
                    Vec2::new(1.0, 0.0),
                    Vec2::new(1.0, 1.0),
                    Vec2::new(0.0, 1.0),
                ],
                closed: true,
            }],
            cusps: vec![Vec2::new(1.0, 1.0)],
            vertices: vec![Vec2::new(0.0, 0.0)],
            inflections: vec![Vec2::new(0.5, 0.0)],
        };
        let s = render(&plot);
        assert_eq!(s.matches("<svg").count(), 1);
        assert!(s.contains(r#"viewBox="-0.05 -1.05 1.1 1.1""#));
        assert!(s.contains("M0,0 L1,0 L1,-1 L0,-1 Z"));
        assert!(s.contains(r#"fill="crimson""#));
        assert!(s.contains("square &lt;unit&gt;"));
        assert!(s.trim_end().ends_with("</svg>"));
    }
}
