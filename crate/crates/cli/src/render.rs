//! Standalone SVG pictures of point sets.
//!
//! Coordinates are mapped to the canvas with exact rational arithmetic,
//! independently per axis, and rounded to hundredths of a pixel only when
//! written. Pictures are for looking at; nothing downstream reads them.

use std::fmt::Write as _;

use emptri_core::{Coloring, PointSet, Triangle};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub const DEFAULT_PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub canvas: u32,
    pub margin: u32,
    pub radius: u32,
    pub palette: Vec<String>,
    pub highlights: Vec<Triangle>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            canvas: 1000,
            margin: 40,
            radius: 6,
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
            highlights: Vec::new(),
        }
    }
}

/// `offset + (v - lo) * extent / span`, in hundredths, rounded half up.
fn map_axis(v: &BigInt, lo: &BigInt, span: &BigInt, offset: u32, extent: u32) -> BigInt {
    if span.is_zero() {
        return BigInt::from(offset) * 100 + BigInt::from(extent) * 50;
    }
    let num = (v - lo) * BigInt::from(extent) * 200 + span;
    BigInt::from(offset) * 100 + num / (span * 2)
}

fn hundredths(v: &BigInt) -> String {
    let sign = if v.is_negative() { "-" } else { "" };
    let a = v.abs();
    let whole = &a / 100;
    let frac: BigInt = &a % 100;
    format!("{sign}{whole}.{frac:0>2}")
}

pub fn render(set: &PointSet, coloring: Option<&Coloring>, spec: &RenderSpec) -> String {
    let pts = set.points();
    let min_x = pts.iter().map(|p| &p.x).min().cloned().unwrap_or_default();
    let max_x = pts.iter().map(|p| &p.x).max().cloned().unwrap_or_default();
    let min_y = pts.iter().map(|p| &p.y).min().cloned().unwrap_or_default();
    let max_y = pts.iter().map(|p| &p.y).max().cloned().unwrap_or_default();
    let span_x = &max_x - &min_x;
    let span_y = &max_y - &min_y;
    let extent = spec.canvas - 2 * spec.margin;
    // screen y grows downward, so map the flipped coordinate
    let screen: Vec<(BigInt, BigInt)> = pts
        .iter()
        .map(|p| {
            let x = map_axis(&p.x, &min_x, &span_x, spec.margin, extent);
            let y = map_axis(&(&max_y - &p.y + &min_y), &min_y, &span_y, spec.margin, extent);
            (x, y)
        })
        .collect();

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        spec.canvas
    )
    .unwrap();
    writeln!(out, r#"<rect width="{0}" height="{0}" fill="white"/>"#, spec.canvas).unwrap();
    for t in &spec.highlights {
        let corners: Vec<String> = t
            .vertices()
            .iter()
            .map(|&i| format!("{},{}", hundredths(&screen[i].0), hundredths(&screen[i].1)))
            .collect();
        writeln!(
            out,
            r##"<polygon class="highlight" points="{}" fill="none" stroke="#000000" stroke-width="2"/>"##,
            corners.join(" ")
        )
        .unwrap();
    }
    for (i, (x, y)) in screen.iter().enumerate() {
        let fill = match coloring {
            Some(col) => {
                let k = col.color(i) as usize;
                spec.palette[(k - 1) % spec.palette.len()].as_str()
            }
            None => "#000000",
        };
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            hundredths(x),
            hundredths(y),
            spec.radius
        )
        .unwrap();
    }
    if let Some(col) = coloring {
        let dx = BigInt::from(spec.radius + 2) * 100;
        for (i, (x, y)) in screen.iter().enumerate() {
            writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14">{}</text>"#,
                hundredths(&(x + &dx)),
                hundredths(&(y - &dx)),
                col.color(i)
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use emptri_core::{cyclic_coloring, generate};

    #[test]
    fn uncolored_points_have_no_labels() {
        let set = PointSet::from_coords(&[(0, 0), (4, 0), (0, 4)]).unwrap();
        let svg = render(&set, None, &RenderSpec::default());
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("<text").count(), 0);
        assert!(svg.contains(r#"cx="40.00" cy="960.00""#));
        assert!(svg.contains(r#"cx="960.00" cy="960.00""#));
        assert!(svg.contains(r#"cx="40.00" cy="40.00""#));
    }

    #[test]
    fn horton_labels_follow_cyclic_pattern() {
        let h = generate(16).unwrap();
        let col = cyclic_coloring(16, 5).unwrap();
        let svg = render(h.point_set(), Some(&col), &RenderSpec::default());
        let labels: Vec<u32> = svg
            .lines()
            .filter(|l| l.starts_with("<text"))
            .map(|l| l.rsplit_once('>').unwrap().0.rsplit_once('>').unwrap().1)
            .map(|s| s.trim_end_matches("</text").parse().unwrap())
            .collect();
        assert_eq!(labels, vec![1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 1]);
        assert_eq!(svg, render(h.point_set(), Some(&col), &RenderSpec::default()));
    }

    #[test]
    fn rounding() {
        assert_eq!(hundredths(&BigInt::from(12345)), "123.45");
        assert_eq!(hundredths(&BigInt::from(-5)), "-0.05");
        // 1/3 of 920 px = 306.666.. -> 306.67
        let v = map_axis(&BigInt::from(1), &BigInt::zero(), &BigInt::from(3), 40, 920);
        assert_eq!(hundredths(&v), "346.67");
    }
}
