//! Static SVG drawing of a line arrangement with its simplex cells shaded.
//!
//! Geometry is exact up to this point; coordinates are converted to `f64`
//! only for output.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::subset::k_subsets;

use super::{simplex_cells, vertex};

const SIZE: f64 = 600.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn f(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Segment of `a x + b y = c` inside the box, if it crosses it.
fn clip(a: f64, b: f64, c: f64, lo: (f64, f64), hi: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    if b.abs() > 1e-12 {
        for x in [lo.0, hi.0] {
            let y = (c - a * x) / b;
            if y >= lo.1 - 1e-9 && y <= hi.1 + 1e-9 {
                pts.push((x, y));
            }
        }
    }
    if a.abs() > 1e-12 {
        for y in [lo.1, hi.1] {
            let x = (c - b * y) / a;
            if x >= lo.0 - 1e-9 && x <= hi.0 + 1e-9 {
                pts.push((x, y));
            }
        }
    }
    pts.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    pts.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
    (pts.len() >= 2).then(|| (pts[0], pts[pts.len() - 1]))
}

/// Renders a generic arrangement of lines. Lines are clipped to the bounding
/// box of all vertices padded by 20% on each side.
pub fn render_svg(h: &Arrangement) -> Result<String> {
    if h.m() != 2 {
        return Err(Error::Argument(format!(
            "SVG output draws lines only (m = 2), got m = {}",
            h.m()
        )));
    }
    let cells = simplex_cells(h)?;
    let points: Vec<(f64, f64)> = k_subsets(h.n(), 2)
        .iter()
        .map(|s| vertex(h, s.elements()).map(|p| (f(&p[0]), f(&p[1]))))
        .collect::<Result<_>>()?;
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for p in &points {
        lo = (lo.0.min(p.0), lo.1.min(p.1));
        hi = (hi.0.max(p.0), hi.1.max(p.1));
    }
    if points.is_empty() {
        (lo, hi) = ((-1.0, -1.0), (1.0, 1.0));
    }
    let pad = |l: f64, h: f64| {
        let w = (h - l).max(1.0) * 0.2;
        (l - w, h + w)
    };
    let (x0, x1) = pad(lo.0, hi.0);
    let (y0, y1) = pad(lo.1, hi.1);
    let (lo, hi) = ((x0, y0), (x1, y1));
    let scale = SIZE / (x1 - x0).max(y1 - y0);
    let map = |p: (f64, f64)| ((p.0 - x0) * scale, (y1 - p.1) * scale);
    let (w, ht) = ((x1 - x0) * scale, (y1 - y0) * scale);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).ok();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.1}" height="{ht:.1}" viewBox="0 0 {w:.1} {ht:.1}">"#
    )
    .ok();
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#).ok();
    for cell in &cells {
        let pts: Vec<String> = cell
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = map((f(&v[0]), f(&v[1])));
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            out,
            r##"  <polygon points="{}" fill="#f2c94c" fill-opacity="0.5" stroke="none"><title>cell {}</title></polygon>"##,
            pts.join(" "),
            cell.hyperplanes
        )
        .ok();
    }
    for i in 1..=h.n() {
        let row = h.coeffs().row(i - 1);
        let Some((p, q)) = clip(f(&row[0]), f(&row[1]), f(&h.constants()[i - 1]), lo, hi) else {
            continue;
        };
        let (p, q) = (map(p), map(q));
        let color = PALETTE[(i - 1) % PALETTE.len()];
        writeln!(
            out,
            r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
            p.0, p.1, q.0, q.1
        )
        .ok();
        writeln!(
            out,
            r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" fill="{color}">H{i}</text>"#,
            q.0.clamp(4.0, w - 24.0),
            q.1.clamp(16.0, ht - 4.0)
        )
        .ok();
    }
    for p in &points {
        let (x, y) = map(*p);
        writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#).ok();
    }
    writeln!(out, "</svg>").ok();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_lines_and_cells() {
        let h = Arrangement::from_i64(&[&[1, 0], &[0, 1], &[1, 1]], &[0, 0, 1]).unwrap();
        let svg = render_svg(&h).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn clip_inside_box() {
        let (p, q) = clip(0.0, 1.0, 0.5, (0.0, 0.0), (1.0, 1.0)).unwrap();
        assert_eq!((p, q), ((0.0, 0.5), (1.0, 0.5)));
        assert!(clip(0.0, 1.0, 5.0, (0.0, 0.0), (1.0, 1.0)).is_none());
    }

    #[test]
    fn rejects_planes() {
        let h =
            Arrangement::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]], &[0, 0, 0, 1]).unwrap();
        assert!(render_svg(&h).is_err());
    }
}
