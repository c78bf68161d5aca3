//! Self-contained SVG drawing of a colored triangulation: the polygon is
//! inscribed in a circle with vertex `0` on the right and labels increasing
//! counterclockwise; chords are stroked in a per-color hue and tagged with
//! their color at the midpoint.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::geometry::ColoredTriangulation;
use crate::polygon_size;

const SIZE: f64 = 480.0;
const RADIUS: f64 = 190.0;

fn vertex_xy(k: usize, count: usize, radius: f64) -> (f64, f64) {
    let theta = TAU * k as f64 / count as f64;
    (SIZE / 2.0 + radius * theta.cos(), SIZE / 2.0 - radius * theta.sin())
}

/// Hue for color `i` out of `0..=n`.
pub fn chord_hue(i: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        280.0 * i as f64 / n as f64
    }
}

pub fn render_svg(t: &ColoredTriangulation) -> String {
    let n = t.n();
    let count = polygon_size(n);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif">"#
    )
    .unwrap();
    writeln!(s, "  <title>{t}</title>").unwrap();
    writeln!(s, r#"  <rect width="100%" height="100%" fill="white"/>"#).unwrap();

    let points: Vec<String> = (0..count)
        .map(|k| {
            let (x, y) = vertex_xy(k, count, RADIUS);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    writeln!(
        s,
        r##"  <polygon points="{}" fill="#f7f7f7" stroke="#333" stroke-width="2"/>"##,
        points.join(" ")
    )
    .unwrap();

    for i in 0..=n {
        let (a, b) = t.chord(i).endpoints();
        let (x1, y1) = vertex_xy(a, count, RADIUS);
        let (x2, y2) = vertex_xy(b, count, RADIUS);
        let hue = chord_hue(i, n);
        writeln!(
            s,
            r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="hsl({hue:.0},75%,42%)" stroke-width="3" data-color="{i}"/>"#
        )
        .unwrap();
    }
    for i in 0..=n {
        let (a, b) = t.chord(i).endpoints();
        let (x1, y1) = vertex_xy(a, count, RADIUS);
        let (x2, y2) = vertex_xy(b, count, RADIUS);
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        let hue = chord_hue(i, n);
        writeln!(
            s,
            r#"  <circle cx="{mx:.2}" cy="{my:.2}" r="10" fill="white" stroke="hsl({hue:.0},75%,42%)"/>"#
        )
        .unwrap();
        writeln!(
            s,
            r#"  <text x="{mx:.2}" y="{:.2}" font-size="12" text-anchor="middle">{i}</text>"#,
            my + 4.0
        )
        .unwrap();
    }
    for k in 0..count {
        let (x, y) = vertex_xy(k, count, RADIUS);
        writeln!(s, r##"  <circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#333"/>"##).unwrap();
        let (lx, ly) = vertex_xy(k, count, RADIUS + 20.0);
        writeln!(
            s,
            r##"  <text x="{lx:.2}" y="{:.2}" font-size="14" text-anchor="middle" fill="#555">{k}</text>"##,
            ly + 5.0
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_svg_is_self_contained() {
        let t = ColoredTriangulation::star(3).unwrap();
        let svg = render_svg(&t);
        assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<line ").count(), 4);
        assert_eq!(svg.matches("data-color=").count(), 4);
        assert!(!svg.contains("href"));
        assert!(svg.contains("<title>n=3; chords: 0:(6,1) 1:(5,1) 2:(4,1) 3:(3,1)</title>"));
    }
}
