//! Horton sets: construction, certification and the cross-pair property.
//!
//! Ranks are 1-based in the documentation (h₁ is the leftmost point) and
//! indices are 0-based in code, so the lower set H⁻ = {h₁, h₃, …} is the set
//! of even indices and the upper set H⁺ = {h₂, h₄, …} the odd indices.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{Orientation, Point, PointSet};

/// How the vertical lift between the two halves is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationPolicy {
    /// Start from `width * height + 1`, double until the merged level
    /// certifies.
    AdaptiveDoubling,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub size: usize,
    pub policy: SeparationPolicy,
    /// Total number of doublings needed over all merge levels.
    pub retries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HortonSet {
    set: PointSet,
    provenance: Provenance,
}

impl HortonSet {
    pub fn point_set(&self) -> &PointSet {
        &self.set
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn into_point_set(self) -> PointSet {
        self.set
    }

    /// Wraps an arbitrary set after a full certification.
    pub fn certify(set: PointSet) -> Result<Self, HortonViolation> {
        verify_horton(&set)?;
        let size = set.len();
        Ok(HortonSet {
            set,
            provenance: Provenance { size, policy: SeparationPolicy::AdaptiveDoubling, retries: 0 },
        })
    }

    pub fn split(&self) -> HortonSplit {
        split(self.len())
    }
}

/// Index partition of an x-sorted set into its upper and lower halves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HortonSplit {
    /// Odd 0-based indices (even ranks, H⁺).
    pub upper: Vec<usize>,
    /// Even 0-based indices (odd ranks, H⁻).
    pub lower: Vec<usize>,
}

pub fn split(n: usize) -> HortonSplit {
    HortonSplit {
        upper: (1..n).step_by(2).collect(),
        lower: (0..n).step_by(2).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HortonViolation {
    NotXSorted { index: usize },
    /// A lower-set point on or above the line through two upper-set points.
    LowerPointAboveUpperLine { line: (usize, usize), point: usize, depth: usize },
    /// An upper-set point on or below the line through two lower-set points.
    UpperPointBelowLowerLine { line: (usize, usize), point: usize, depth: usize },
}

impl fmt::Display for HortonViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HortonViolation::NotXSorted { index } => {
                write!(f, "x-coordinates not strictly increasing at index {index}")
            }
            HortonViolation::LowerPointAboveUpperLine { line, point, depth } => write!(
                f,
                "depth {depth}: lower point {point} is not below the line through upper points {} and {}",
                line.0, line.1
            ),
            HortonViolation::UpperPointBelowLowerLine { line, point, depth } => write!(
                f,
                "depth {depth}: upper point {point} is not above the line through lower points {} and {}",
                line.0, line.1
            ),
        }
    }
}

impl std::error::Error for HortonViolation {}

/// Compares slope(o, a) with slope(o, b) exactly. Neither `a` nor `b` may
/// share `o`'s x-coordinate.
fn cmp_slope(set: &PointSet, o: usize, a: usize, b: usize) -> Ordering {
    match set.small_coords() {
        Some(s) => {
            // |dy|, |dx| < 2^63, so each product fits in i128
            let norm = |p: (i64, i64)| {
                let (dx, dy) = (p.0 as i128 - s[o].0 as i128, p.1 as i128 - s[o].1 as i128);
                if dx < 0 { (-dy, -dx) } else { (dy, dx) }
            };
            let ((ay, ax), (by, bx)) = (norm(s[a]), norm(s[b]));
            (ay * bx).cmp(&(by * ax))
        }
        None => {
            let po = set.point(o);
            let norm = |p: &Point| {
                let (dx, dy) = (&p.x - &po.x, &p.y - &po.y);
                if dx < BigInt::zero() { (-dy, -dx) } else { (dy, dx) }
            };
            let ((ay, ax), (by, bx)) = (norm(set.point(a)), norm(set.point(b)));
            (ay * bx).cmp(&(by * ax))
        }
    }
}

/// Whether every point of `others` lies strictly below (or, with
/// `below == false`, above) every line through two points of `anchors`.
/// Indices must be x-sorted with distinct x.
///
/// For an anchor `u`, a point to its right is below all lines through `u`
/// iff its slope from `u` is smaller than the smallest anchor slope at `u`,
/// and a point to its left iff its slope is larger than the largest, so
/// each (anchor, point) pair costs one comparison.
fn separated(set: &PointSet, anchors: &[usize], others: &[usize], below: bool) -> bool {
    if anchors.len() < 2 {
        return true;
    }
    anchors.par_iter().all(|&u| {
        let mut partners = anchors.iter().copied().filter(|&v| v != u);
        let first = partners.next().unwrap();
        let (mut lo, mut hi) = (first, first);
        for v in partners {
            if cmp_slope(set, u, v, lo) == Ordering::Less {
                lo = v;
            }
            if cmp_slope(set, u, v, hi) == Ordering::Greater {
                hi = v;
            }
        }
        others.iter().all(|&p| match (below, p > u) {
            (true, true) | (false, false) => cmp_slope(set, u, p, lo) == Ordering::Less,
            (true, false) | (false, true) => cmp_slope(set, u, p, hi) == Ordering::Greater,
        })
    })
}

/// Checks both separation conditions for one level, given the level's
/// indices in x order. Returns the first violation in pair order.
fn check_level(set: &PointSet, idx: &[usize], depth: usize) -> Result<(), HortonViolation> {
    let lower: Vec<usize> = idx.iter().copied().step_by(2).collect();
    let upper: Vec<usize> = idx.iter().copied().skip(1).step_by(2).collect();
    if separated(set, &upper, &lower, true) && separated(set, &lower, &upper, false) {
        return Ok(());
    }
    // locate the first violating pair with the direct orientation scan
    let found = (0..upper.len()).into_par_iter().find_map_first(|a| {
        for &u2 in &upper[a + 1..] {
            let u1 = upper[a];
            if let Some(&l) = lower
                .iter()
                .find(|&&l| set.orient(u1, u2, l) != Orientation::Clockwise)
            {
                return Some(HortonViolation::LowerPointAboveUpperLine {
                    line: (u1, u2),
                    point: l,
                    depth,
                });
            }
        }
        None
    });
    if let Some(v) = found {
        return Err(v);
    }
    let found = (0..lower.len()).into_par_iter().find_map_first(|a| {
        for &l2 in &lower[a + 1..] {
            let l1 = lower[a];
            if let Some(&u) = upper
                .iter()
                .find(|&&u| set.orient(l1, l2, u) != Orientation::CounterClockwise)
            {
                return Some(HortonViolation::UpperPointBelowLowerLine {
                    line: (l1, l2),
                    point: u,
                    depth,
                });
            }
        }
        None
    });
    match found {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

fn verify_rec(set: &PointSet, idx: &[usize], depth: usize) -> Result<(), HortonViolation> {
    if idx.len() <= 2 {
        return Ok(());
    }
    check_level(set, idx, depth)?;
    let lower: Vec<usize> = idx.iter().copied().step_by(2).collect();
    let upper: Vec<usize> = idx.iter().copied().skip(1).step_by(2).collect();
    let (l, u) = rayon::join(
        || verify_rec(set, &lower, depth + 1),
        || verify_rec(set, &upper, depth + 1),
    );
    // lower half first keeps the reported violation deterministic
    l.and(u)
}

/// Exhaustive recursive certificate of the Horton property.
pub fn verify_horton(set: &PointSet) -> Result<(), HortonViolation> {
    let pts = set.points();
    if let Some(i) = (1..pts.len()).find(|&i| pts[i - 1].x >= pts[i].x) {
        return Err(HortonViolation::NotXSorted { index: i });
    }
    let idx: Vec<usize> = (0..set.len()).collect();
    verify_rec(set, &idx, 0)
}

/// A cross pair whose line has a point of the wrong half on the wrong side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossPairViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// For every pair with one endpoint in each half, checks that the
/// x-between points of the upper half lie above the line and those of the
/// lower half below it. Expects an x-sorted set.
pub fn check_cross_pairs(set: &PointSet) -> Result<(), CrossPairViolation> {
    let n = set.len();
    let found = (0..n).into_par_iter().find_map_first(|i| {
        for j in (i + 1..n).step_by(2) {
            // i and j have different parity here
            for k in i + 1..j {
                let want = if k % 2 == 1 {
                    Orientation::CounterClockwise
                } else {
                    Orientation::Clockwise
                };
                if set.orient(i, j, k) != want {
                    return Some(CrossPairViolation { i, j, k });
                }
            }
        }
        None
    });
    match found {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

struct Builder {
    cache: HashMap<usize, Vec<BigInt>>,
    retries: usize,
}

impl Builder {
    /// y-coordinates of the size-`n` set; x is the index. Minimum y is 0.
    fn heights(&mut self, n: usize) -> Vec<BigInt> {
        if let Some(ys) = self.cache.get(&n) {
            return ys.clone();
        }
        let ys = if n == 1 {
            vec![BigInt::zero()]
        } else {
            let lower = self.heights(n.div_ceil(2));
            let upper = self.heights(n / 2);
            let height = lower.iter().chain(&upper).max().cloned().unwrap_or_default();
            let mut lift = BigInt::from(n) * height + BigInt::one();
            loop {
                let ys = interleave(&lower, &upper, &lift);
                let set = PointSet::new_unchecked(with_x(&ys));
                let idx: Vec<usize> = (0..n).collect();
                if check_level(&set, &idx, 0).is_ok() {
                    break ys;
                }
                lift *= 2;
                self.retries += 1;
            }
        };
        self.cache.insert(n, ys.clone());
        ys
    }
}

fn interleave(lower: &[BigInt], upper: &[BigInt], lift: &BigInt) -> Vec<BigInt> {
    let n = lower.len() + upper.len();
    (0..n)
        .map(|i| {
            if i % 2 == 0 {
                lower[i / 2].clone()
            } else {
                &upper[i / 2] + lift
            }
        })
        .collect()
}

fn with_x(ys: &[BigInt]) -> Vec<Point> {
    ys.iter().enumerate().map(|(x, y)| Point::new(x, y.clone())).collect()
}

/// Deterministic Horton set of `n` points with x-coordinates `0..n`.
///
/// The set is built by interleaving a lower set of size ⌈n/2⌉ with an upper
/// set of size ⌊n/2⌋ lifted vertically. Each merge is certified exactly before
/// it is accepted, and since both halves are certified recursively, the
/// result is a Horton set in general position.
pub fn generate(n: usize) -> Result<HortonSet> {
    if n == 0 {
        return Err(Error::InvalidArgument("a Horton set needs at least one point".into()));
    }
    let mut builder = Builder { cache: HashMap::new(), retries: 0 };
    let ys = builder.heights(n);
    Ok(HortonSet {
        set: PointSet::new_unchecked(with_x(&ys)),
        provenance: Provenance {
            size: n,
            policy: SeparationPolicy::AdaptiveDoubling,
            retries: builder.retries,
        },
    })
}
