//! Exact planar primitives over integer coordinates.
//!
//! Every predicate here is evaluated exactly. Coordinates are arbitrary
//! precision; a [`PointSet`] keeps a machine-word copy of its coordinates
//! when they are small enough for the determinant to fit in `i128`, and
//! falls back to big-integer arithmetic otherwise.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coordinates up to this magnitude take the `i128` path: differences stay
/// below 2^62 and the determinant below 2^125.
const SMALL_LIMIT: i64 = 1 << 61;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigInt,
    pub y: BigInt,
}

impl Point {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Point { x: x.into(), y: y.into() }
    }

    /// Lexicographic (x, then y) order.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }
}

/// Sign of the doubled signed area of `(p, q, r)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let det = doubled_signed_area(p, q, r);
    Orientation::from_ordering(det.cmp(&BigInt::zero()))
}

pub fn doubled_signed_area(p: &Point, q: &Point, r: &Point) -> BigInt {
    (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)
}

#[inline]
fn orient_small(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> Orientation {
    let det = (q.0 as i128 - p.0 as i128) * (r.1 as i128 - p.1 as i128)
        - (q.1 as i128 - p.1 as i128) * (r.0 as i128 - p.0 as i128);
    Orientation::from_ordering(det.cmp(&0))
}

/// A triangle as a sorted triple of point indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    a: usize,
    b: usize,
    c: usize,
}

impl Triangle {
    pub fn new(i: usize, j: usize, k: usize) -> Result<Self> {
        let mut v = [i, j, k];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::RepeatedVertex(v[1]));
        }
        Ok(Triangle { a: v[0], b: v[1], c: v[2] })
    }

    /// Caller guarantees `a < b < c`.
    pub(crate) fn from_sorted(a: usize, b: usize, c: usize) -> Self {
        debug_assert!(a < b && b < c);
        Triangle { a, b, c }
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn contains_vertex(&self, i: usize) -> bool {
        self.a == i || self.b == i || self.c == i
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Result of a general-position check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneralPosition {
    Ok,
    /// Every collinear index triple, sorted. Coincident points show up as
    /// collinear with every third point; a coincident pair in a two-point
    /// input is reported with both slots of the pair repeated.
    Violation(Vec<(usize, usize, usize)>),
}

impl GeneralPosition {
    pub fn is_ok(&self) -> bool {
        matches!(self, GeneralPosition::Ok)
    }
}

/// Exhaustively checks that no three of `points` are collinear.
pub fn validate_general_position(points: &[Point]) -> GeneralPosition {
    let small = small_coords(points);
    let orient = |i: usize, j: usize, k: usize| match &small {
        Some(s) => orient_small(s[i], s[j], s[k]),
        None => orientation(&points[i], &points[j], &points[k]),
    };
    let n = points.len();
    let mut bad = Vec::new();
    if n == 2 && points[0] == points[1] {
        bad.push((0, 1, 1));
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(i, j, k) == Orientation::Collinear {
                    bad.push((i, j, k));
                }
            }
        }
    }
    if bad.is_empty() {
        GeneralPosition::Ok
    } else {
        GeneralPosition::Violation(bad)
    }
}

fn small_coords(points: &[Point]) -> Option<Vec<(i64, i64)>> {
    points
        .iter()
        .map(|p| {
            let x = p.x.to_i64().filter(|v| v.unsigned_abs() <= SMALL_LIMIT as u64)?;
            let y = p.y.to_i64().filter(|v| v.unsigned_abs() <= SMALL_LIMIT as u64)?;
            Some((x, y))
        })
        .collect()
}

/// An ordered set of distinct points, no three collinear.
///
/// The index order is the order the points were supplied in.
#[derive(Debug, Clone)]
pub struct PointSet {
    points: Vec<Point>,
    small: Option<Vec<(i64, i64)>>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for PointSet {}

impl PointSet {
    /// Validates general position and builds the set.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let GeneralPosition::Violation(bad) = validate_general_position(&points) {
            let (i, j, k) = bad[0];
            if points.len() == 2 {
                return Err(Error::DuplicatePoint(i, j));
            }
            return Err(Error::Collinear(i, j, k));
        }
        Ok(Self::new_unchecked(points))
    }

    /// Skips the cubic general-position check. Callers certify the set by
    /// other means (Horton construction does).
    pub(crate) fn new_unchecked(points: Vec<Point>) -> Self {
        let small = small_coords(&points);
        PointSet { points, small }
    }

    pub fn from_coords<T: Into<BigInt> + Copy>(coords: &[(T, T)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// Whether orientation tests run on machine integers.
    pub fn has_small_coords(&self) -> bool {
        self.small.is_some()
    }

    /// The coordinates as machine integers, when they are small enough.
    pub(crate) fn small_coords(&self) -> Option<&[(i64, i64)]> {
        self.small.as_deref()
    }

    #[inline]
    pub fn orient(&self, i: usize, j: usize, k: usize) -> Orientation {
        match &self.small {
            Some(s) => orient_small(s[i], s[j], s[k]),
            None => orientation(&self.points[i], &self.points[j], &self.points[k]),
        }
    }

    /// Subset in the order of `indices`. General position is inherited.
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet::new_unchecked(indices.iter().map(|&i| self.points[i].clone()).collect())
    }

    /// Indices sorted lexicographically by (x, y).
    pub fn lex_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        match &self.small {
            Some(s) => order.sort_by_key(|&i| s[i]),
            None => order.sort_by(|&i, &j| self.points[i].lex_cmp(&self.points[j])),
        }
        order
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, len: self.len() })
        }
    }

    fn check_triangle(&self, t: &Triangle) -> Result<()> {
        t.vertices().iter().try_for_each(|&i| self.check_index(i))
    }

    /// Whether point `p` lies strictly inside triangle `t`.
    pub fn strictly_inside(&self, t: &Triangle, p: usize) -> bool {
        let [a, b, c] = t.vertices();
        let o1 = self.orient(a, b, p);
        let o2 = self.orient(b, c, p);
        let o3 = self.orient(c, a, p);
        o1 != Orientation::Collinear && o1 == o2 && o2 == o3
    }

    pub fn doubled_area(&self, t: &Triangle) -> BigInt {
        let [a, b, c] = t.vertices();
        doubled_signed_area(&self.points[a], &self.points[b], &self.points[c]).abs()
    }

    /// Doubled area of a simple polygon given by vertex indices in order.
    pub fn polygon_doubled_area(&self, polygon: &[usize]) -> BigInt {
        let m = polygon.len();
        let mut sum = BigInt::zero();
        for k in 0..m {
            let p = &self.points[polygon[k]];
            let q = &self.points[polygon[(k + 1) % m]];
            sum += &p.x * &q.y - &q.x * &p.y;
        }
        sum.abs()
    }
}

/// Number of points of `set`, other than the vertices, strictly inside `t`.
pub fn interior_count(set: &PointSet, t: &Triangle) -> Result<usize> {
    set.check_triangle(t)?;
    Ok((0..set.len())
        .filter(|&p| !t.contains_vertex(p) && set.strictly_inside(t, p))
        .count())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    /// Counterclockwise, starting at the lexicographically smallest point.
    pub hull: Vec<usize>,
    /// Remaining indices, ascending.
    pub interior: Vec<usize>,
}

/// Monotone-chain convex hull.
pub fn convex_hull(set: &PointSet) -> Hull {
    let order = set.lex_order();
    let n = order.len();
    if n <= 2 {
        return Hull { hull: order, interior: Vec::new() };
    }
    let mut lower: Vec<usize> = Vec::with_capacity(n);
    for &p in &order {
        while lower.len() >= 2
            && set.orient(lower[lower.len() - 2], lower[lower.len() - 1], p)
                != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(n);
    for &p in order.iter().rev() {
        while upper.len() >= 2
            && set.orient(upper[upper.len() - 2], upper[upper.len() - 1], p)
                != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let mut on_hull = vec![false; set.len()];
    for &h in &lower {
        on_hull[h] = true;
    }
    let interior = (0..set.len()).filter(|&i| !on_hull[i]).collect();
    Hull { hull: lower, interior }
}

/// Triangulates the convex hull of `set` using every point as a vertex.
///
/// Points are inserted in lexicographic order. Each new point is outside the
/// hull built so far and is joined to every hull edge it sees, giving one
/// triangle per visible edge.
pub fn triangulate(set: &PointSet) -> Result<Vec<Triangle>> {
    let n = set.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let order = set.lex_order();
    let (p0, p1, p2) = (order[0], order[1], order[2]);
    let mut hull = if set.orient(p0, p1, p2) == Orientation::CounterClockwise {
        vec![p0, p1, p2]
    } else {
        vec![p0, p2, p1]
    };
    let mut triangles = vec![Triangle::new(p0, p1, p2)?];
    for &p in &order[3..] {
        let h = hull.len();
        let visible: Vec<bool> = (0..h)
            .map(|k| set.orient(hull[k], hull[(k + 1) % h], p) == Orientation::Clockwise)
            .collect();
        let start = (0..h)
            .find(|&k| visible[k] && !visible[(k + h - 1) % h])
            .expect("new lexicographic maximum must see a hull edge");
        let mut end = start;
        while visible[(end + 1) % h] {
            end = (end + 1) % h;
        }
        let mut k = start;
        loop {
            triangles.push(Triangle::new(hull[k], hull[(k + 1) % h], p)?);
            if k == end {
                break;
            }
            k = (k + 1) % h;
        }
        let mut next = Vec::with_capacity(h + 1);
        let mut k = (end + 1) % h;
        loop {
            next.push(hull[k]);
            if k == start {
                break;
            }
            k = (k + 1) % h;
        }
        next.push(p);
        hull = next;
    }
    Ok(triangles)
}

/// Interior counts for all triangles of a set, answered in O(1) each after
/// an O(n^3) precomputation.
///
/// Points are ranked lexicographically; for ranks `i < j`, `below(i, j)`
/// counts ranks strictly between them lying to the right of the directed
/// segment i→j. For ranks `a < b < c` the interior count follows from the
/// three `below` values and the side of `ac` on which `b` lies.
#[derive(Debug, Clone)]
pub struct InteriorTable {
    n: usize,
    rank: Vec<usize>,
    by_rank: Vec<usize>,
    below: Vec<u32>,
    set: PointSet,
}

impl InteriorTable {
    pub fn new(set: &PointSet) -> Self {
        let n = set.len();
        let by_rank = set.lex_order();
        let mut rank = vec![0; n];
        for (r, &i) in by_rank.iter().enumerate() {
            rank[i] = r;
        }
        let mut below = vec![0u32; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let (pi, pj) = (by_rank[i], by_rank[j]);
                let count = (i + 1..j)
                    .filter(|&k| set.orient(pi, pj, by_rank[k]) == Orientation::Clockwise)
                    .count();
                below[i * n + j] = count as u32;
            }
        }
        InteriorTable { n, rank, by_rank, below, set: set.clone() }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn point_set(&self) -> &PointSet {
        &self.set
    }

    #[inline]
    fn below(&self, i: usize, j: usize) -> u32 {
        self.below[i * self.n + j]
    }

    /// Interior count of the triangle with (distinct, in-range) vertex
    /// indices `i`, `j`, `k`.
    #[inline]
    pub fn count(&self, i: usize, j: usize, k: usize) -> u32 {
        let mut r = [self.rank[i], self.rank[j], self.rank[k]];
        r.sort_unstable();
        let [a, b, c] = r;
        let side = self.set.orient(self.by_rank[a], self.by_rank[c], self.by_rank[b]);
        if side == Orientation::CounterClockwise {
            self.below(a, b) + self.below(b, c) - self.below(a, c)
        } else {
            self.below(a, c) - self.below(a, b) - self.below(b, c) - 1
        }
    }

    pub fn count_triangle(&self, t: &Triangle) -> u32 {
        self.count(t.a, t.b, t.c)
    }
}
