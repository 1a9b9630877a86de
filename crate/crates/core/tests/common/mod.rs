//! Independent reference implementations used as test oracles.
//!
//! Everything here works on plain `i64` coordinates with naive loops and
//! shares no code with the crate beyond reading coordinates out of a
//! `PointSet`.
#![allow(dead_code)]

use emptri_core::PointSet;
use num_traits::ToPrimitive;

pub type P = (i64, i64);

pub fn coords(set: &PointSet) -> Vec<P> {
    set.points().iter().map(|p| (p.x.to_i64().unwrap(), p.y.to_i64().unwrap())).collect()
}

/// Sign of the cross product (q - p) × (r - p).
pub fn orient(p: P, q: P, r: P) -> i32 {
    let d = (q.0 - p.0) as i128 * (r.1 - p.1) as i128 - (q.1 - p.1) as i128 * (r.0 - p.0) as i128;
    d.signum() as i32
}

pub fn twice_area(p: P, q: P, r: P) -> i128 {
    ((q.0 - p.0) as i128 * (r.1 - p.1) as i128 - (q.1 - p.1) as i128 * (r.0 - p.0) as i128).abs()
}

/// Strict containment by matching orientation signs.
pub fn inside_by_signs(a: P, b: P, c: P, p: P) -> bool {
    let o = orient(a, b, c);
    o != 0 && orient(a, b, p) == o && orient(b, c, p) == o && orient(c, a, p) == o
}

/// Strict containment by area decomposition: the three sub-triangles are
/// non-degenerate and tile the triangle.
pub fn inside_by_areas(a: P, b: P, c: P, p: P) -> bool {
    let (x, y, z) = (twice_area(a, b, p), twice_area(b, c, p), twice_area(c, a, p));
    x > 0 && y > 0 && z > 0 && x + y + z == twice_area(a, b, c)
}

pub fn interior_by_signs(pts: &[P], a: usize, b: usize, c: usize) -> u32 {
    (0..pts.len())
        .filter(|&p| p != a && p != b && p != c && inside_by_signs(pts[a], pts[b], pts[c], pts[p]))
        .count() as u32
}

pub fn interior_by_areas(pts: &[P], a: usize, b: usize, c: usize) -> u32 {
    (0..pts.len())
        .filter(|&p| p != a && p != b && p != c && inside_by_areas(pts[a], pts[b], pts[c], pts[p]))
        .count() as u32
}

pub fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

/// Triples with at most `s` interior points, in lexicographic order.
pub fn forbidden(pts: &[P], s: u32) -> Vec<[usize; 3]> {
    triples(pts.len()).filter(|&[a, b, c]| interior_by_signs(pts, a, b, c) <= s).collect()
}

/// Whether `colors` (1-based) leaves some forbidden triple monochromatic.
pub fn has_mono(edges: &[[usize; 3]], colors: &[u32]) -> bool {
    edges.iter().any(|&[a, b, c]| colors[a] == colors[b] && colors[b] == colors[c])
}

/// Plain enumeration of all `c^n` colorings; returns a proper one if any.
pub fn brute_force(n: usize, edges: &[[usize; 3]], c: u32) -> Option<Vec<u32>> {
    let mut colors = vec![1u32; n];
    loop {
        if !has_mono(edges, &colors) {
            return Some(colors);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if colors[i] < c {
                colors[i] += 1;
                break;
            }
            colors[i] = 1;
            i += 1;
        }
    }
}

/// Convex hull by gift wrapping, CCW, as indices.
pub fn gift_wrap(pts: &[P]) -> Vec<usize> {
    let n = pts.len();
    if n < 3 {
        return (0..n).collect();
    }
    let start = (0..n).min_by_key(|&i| pts[i]).unwrap();
    let mut hull = vec![start];
    let mut cur = start;
    loop {
        let mut next = if cur == 0 { 1 } else { 0 };
        for j in 0..n {
            if j != cur && orient(pts[cur], pts[next], pts[j]) < 0 {
                next = j;
            }
        }
        if next == start {
            return hull;
        }
        hull.push(next);
        cur = next;
    }
}

pub fn polygon_twice_area(pts: &[P], poly: &[usize]) -> i128 {
    let mut s: i128 = 0;
    for k in 0..poly.len() {
        let (p, q) = (pts[poly[k]], pts[poly[(k + 1) % poly.len()]]);
        s += p.0 as i128 * q.1 as i128 - q.0 as i128 * p.1 as i128;
    }
    s.abs()
}

/// Recursive Horton definition checked literally on x-sorted points:
/// every line through two odd-indexed points passes above all even-indexed
/// points and every line through two even-indexed points passes below all
/// odd-indexed points; both halves recursively Horton.
pub fn naive_is_horton(pts: &[P]) -> bool {
    if pts.windows(2).any(|w| w[0].0 >= w[1].0) {
        return false;
    }
    if pts.len() <= 2 {
        return true;
    }
    let upper: Vec<P> = pts.iter().skip(1).step_by(2).copied().collect();
    let lower: Vec<P> = pts.iter().step_by(2).copied().collect();
    // with a.x < b.x, p is above line ab iff orient(a, b, p) > 0
    for i in 0..upper.len() {
        for j in i + 1..upper.len() {
            if lower.iter().any(|&p| orient(upper[i], upper[j], p) >= 0) {
                return false;
            }
        }
    }
    for i in 0..lower.len() {
        for j in i + 1..lower.len() {
            if upper.iter().any(|&p| orient(lower[i], lower[j], p) <= 0) {
                return false;
            }
        }
    }
    naive_is_horton(&upper) && naive_is_horton(&lower)
}
