//! Colorings and monochromatic-triangle scanning.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{InteriorTable, PointSet, Triangle};

/// One color in `1..=c` per point index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<u32>,
    c: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, c: u32) -> Result<Self> {
        if let Some((index, &color)) = colors
            .iter()
            .enumerate()
            .find(|(_, &k)| k == 0 || k > c)
        {
            return Err(Error::ColorOutOfRange { index, color, colors: c });
        }
        Ok(Coloring { colors, c })
    }

    /// Uses the largest color present as the color count.
    pub fn from_colors(colors: Vec<u32>) -> Result<Self> {
        let c = colors.iter().copied().max().unwrap_or(1);
        Coloring::new(colors, c)
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, i: usize) -> u32 {
        self.colors[i]
    }

    pub fn num_colors(&self) -> u32 {
        self.c
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Every class in `1..=c` is non-empty.
    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.c as usize];
        for &k in &self.colors {
            seen[(k - 1) as usize] = true;
        }
        seen.iter().all(|&s| s)
    }

    /// Fails unless every class is non-empty; for contexts that need a true
    /// partition into `c` color classes.
    pub fn require_surjective(&self) -> Result<()> {
        if self.is_surjective() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "coloring leaves some of the {} classes empty",
                self.c
            )))
        }
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.colors.len() == n {
            Ok(())
        } else {
            Err(Error::SizeMismatch { expected: n, got: self.colors.len() })
        }
    }

    /// Applies `map[k - 1]` to every color `k`. `map` must be a permutation
    /// of `1..=c`.
    pub fn relabel(&self, map: &[u32]) -> Result<Coloring> {
        let mut sorted = map.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=self.c).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument("relabeling is not a permutation".into()));
        }
        Ok(Coloring {
            colors: self.colors.iter().map(|&k| map[(k - 1) as usize]).collect(),
            c: self.c,
        })
    }

    /// Indices of each color class, ascending; entry `k - 1` holds color `k`.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.c as usize];
        for (i, &k) in self.colors.iter().enumerate() {
            classes[(k - 1) as usize].push(i);
        }
        classes
    }
}

/// The cyclic coloring of an x-sorted set of `n` points.
///
/// Odd `c`: rank `i` (1-based) gets color `((i - 1) mod c) + 1`. Even `c`:
/// the rightmost point gets color `c` and the other `n - 1` points are
/// colored cyclically with `c - 1` colors.
pub fn cyclic_coloring(n: usize, c: u32) -> Result<Coloring> {
    if c < 2 {
        return Err(Error::InvalidArgument("cyclic coloring needs c >= 2".into()));
    }
    if n < c as usize {
        return Err(Error::TooFewPointsForColors { n, c });
    }
    let period = if c % 2 == 1 { c } else { c - 1 };
    let mut colors: Vec<u32> = (0..n).map(|i| (i as u32 % period) + 1).collect();
    if c.is_multiple_of(2) {
        colors[n - 1] = c;
    }
    Coloring::new(colors, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleRecord {
    pub triangle: Triangle,
    pub interior: u32,
    /// The shared color when the triangle is monochromatic.
    pub mono_color: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub threshold: u32,
    /// All C(n,3) triangles in lexicographic order, when requested.
    pub records: Option<Vec<TriangleRecord>>,
    pub mono_count: u64,
    /// Monochromatic triangles with at most `threshold` interior points.
    pub qualifying_count: u64,
    /// Lexicographically smallest qualifying triangle.
    pub first_hit: Option<TriangleRecord>,
    pub min_interior_mono: Option<u32>,
}

impl ScanReport {
    pub fn found(&self) -> bool {
        self.first_hit.is_some()
    }
}

/// Reusable scanner for one point set; the interior-count table is built
/// once and shared by every coloring scanned.
#[derive(Debug, Clone)]
pub struct Scanner {
    table: InteriorTable,
}

impl Scanner {
    pub fn new(set: &PointSet) -> Self {
        Scanner { table: InteriorTable::new(set) }
    }

    pub fn from_table(table: InteriorTable) -> Self {
        Scanner { table }
    }

    pub fn table(&self) -> &InteriorTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Summary scan over monochromatic triangles only.
    pub fn scan(&self, coloring: &Coloring, s: u32) -> Result<ScanReport> {
        coloring.check_len(self.len())?;
        let mut report = ScanReport {
            threshold: s,
            records: None,
            mono_count: 0,
            qualifying_count: 0,
            first_hit: None,
            min_interior_mono: None,
        };
        for (k, class) in coloring.classes().iter().enumerate() {
            let color = k as u32 + 1;
            for (x, &a) in class.iter().enumerate() {
                for (y, &b) in class.iter().enumerate().skip(x + 1) {
                    for &c in &class[y + 1..] {
                        let interior = self.table.count(a, b, c);
                        let record = TriangleRecord {
                            triangle: Triangle::from_sorted(a, b, c),
                            interior,
                            mono_color: Some(color),
                        };
                        note(&mut report, record);
                    }
                }
            }
        }
        Ok(report)
    }

    /// Scan that also records every one of the C(n,3) triangles.
    pub fn scan_full(&self, coloring: &Coloring, s: u32) -> Result<ScanReport> {
        coloring.check_len(self.len())?;
        let n = self.len();
        let mut report = ScanReport {
            threshold: s,
            records: None,
            mono_count: 0,
            qualifying_count: 0,
            first_hit: None,
            min_interior_mono: None,
        };
        let mut records = Vec::with_capacity(n * n.saturating_sub(1) * n.saturating_sub(2) / 6);
        let col = coloring.colors();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let interior = self.table.count(a, b, c);
                    let mono = col[a] == col[b] && col[b] == col[c];
                    let record = TriangleRecord {
                        triangle: Triangle::from_sorted(a, b, c),
                        interior,
                        mono_color: mono.then_some(col[a]),
                    };
                    if mono {
                        note(&mut report, record);
                    }
                    records.push(record);
                }
            }
        }
        report.records = Some(records);
        Ok(report)
    }

    /// Early-exit check: is there a monochromatic triangle with at most `s`
    /// interior points? `colors` must have one entry per point.
    pub fn has_small_mono(&self, colors: &[u32], s: u32) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                if colors[a] != colors[b] {
                    continue;
                }
                for c in b + 1..n {
                    if colors[c] == colors[a] && self.table.count(a, b, c) <= s {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Minimum interior count over each color's triangles, for colors with
    /// at least three points.
    pub fn min_interior_statistics(&self, coloring: &Coloring) -> Result<BTreeMap<u32, u32>> {
        coloring.check_len(self.len())?;
        let mut stats = BTreeMap::new();
        for (k, class) in coloring.classes().iter().enumerate() {
            let mut best: Option<u32> = None;
            for (x, &a) in class.iter().enumerate() {
                for (y, &b) in class.iter().enumerate().skip(x + 1) {
                    for &c in &class[y + 1..] {
                        let v = self.table.count(a, b, c);
                        best = Some(best.map_or(v, |m| m.min(v)));
                    }
                }
            }
            if let Some(m) = best {
                stats.insert(k as u32 + 1, m);
            }
        }
        Ok(stats)
    }
}

fn note(report: &mut ScanReport, record: TriangleRecord) {
    report.mono_count += 1;
    report.min_interior_mono = Some(
        report
            .min_interior_mono
            .map_or(record.interior, |m| m.min(record.interior)),
    );
    if record.interior <= report.threshold {
        report.qualifying_count += 1;
        if report
            .first_hit
            .is_none_or(|hit| record.triangle < hit.triangle)
        {
            report.first_hit = Some(record);
        }
    }
}

/// Scans every monochromatic triangle of `set` under `coloring`.
pub fn scan(set: &PointSet, coloring: &Coloring, s: u32) -> Result<ScanReport> {
    Scanner::new(set).scan(coloring, s)
}

pub fn min_interior_statistics(set: &PointSet, coloring: &Coloring) -> Result<BTreeMap<u32, u32>> {
    Scanner::new(set).min_interior_statistics(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_examples() {
        assert_eq!(
            cyclic_coloring(10, 5).unwrap().colors(),
            &[1, 2, 3, 4, 5, 1, 2, 3, 4, 5]
        );
        assert_eq!(cyclic_coloring(5, 5).unwrap().colors(), &[1, 2, 3, 4, 5]);
        assert_eq!(
            cyclic_coloring(9, 4).unwrap().colors(),
            &[1, 2, 3, 1, 2, 3, 1, 2, 4]
        );
        assert!(matches!(
            cyclic_coloring(3, 4),
            Err(Error::TooFewPointsForColors { n: 3, c: 4 })
        ));
        assert!(cyclic_coloring(4, 4).unwrap().is_surjective());
    }

    #[test]
    fn cyclic_coloring_splits_cyclically() {
        // H- gets 1,3,5,2,4,... and H+ gets 2,4,1,3,5,...
        let col = cyclic_coloring(40, 5).unwrap();
        let lower: Vec<u32> = col.colors().iter().copied().step_by(2).collect();
        let upper: Vec<u32> = col.colors().iter().copied().skip(1).step_by(2).collect();
        assert_eq!(&lower[..5], &[1, 3, 5, 2, 4]);
        assert_eq!(&upper[..5], &[2, 4, 1, 3, 5]);
        for seq in [&lower, &upper] {
            for i in 5..seq.len() {
                assert_eq!(seq[i], seq[i - 5]);
            }
            let mut head = seq[..5].to_vec();
            head.sort_unstable();
            assert_eq!(head, vec![1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn coloring_validation() {
        assert!(matches!(
            Coloring::new(vec![1, 0], 2),
            Err(Error::ColorOutOfRange { index: 1, color: 0, colors: 2 })
        ));
        assert!(Coloring::new(vec![1, 3], 2).is_err());
        let c = Coloring::new(vec![1, 1], 2).unwrap();
        assert!(!c.is_surjective());
        assert!(c.require_surjective().is_err());
    }

    #[test]
    fn three_same_colored_points() {
        let set = PointSet::from_coords(&[(0, 0), (5, 0), (0, 5)]).unwrap();
        let col = Coloring::new(vec![2, 2, 2], 2).unwrap();
        let r = scan(&set, &col, 0).unwrap();
        assert!(r.found());
        assert_eq!(r.min_interior_mono, Some(0));
        assert_eq!(min_interior_statistics(&set, &col).unwrap(), BTreeMap::from([(2, 0)]));
    }

    #[test]
    fn red_triangle_with_two_blue_inside() {
        let set = PointSet::from_coords(&[(0, 0), (12, 0), (0, 12), (2, 3), (4, 5)]).unwrap();
        let col = Coloring::new(vec![1, 1, 1, 2, 2], 2).unwrap();
        let r = scan(&set, &col, 1).unwrap();
        assert!(!r.found());
        assert_eq!(r.min_interior_mono, Some(2));
        assert_eq!(r.mono_count, 1);
    }

    #[test]
    fn size_mismatch() {
        let set = PointSet::from_coords(&[(0, 0), (5, 0), (0, 5)]).unwrap();
        let col = Coloring::new(vec![1, 1], 1).unwrap();
        assert!(matches!(
            scan(&set, &col, 0),
            Err(Error::SizeMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn full_scan_agrees_with_summary() {
        let set = PointSet::from_coords(&[
            (0, 0), (9, 1), (4, 8), (2, 3), (7, 2), (5, 5), (1, 7), (8, 6),
        ])
        .unwrap();
        let col = Coloring::new(vec![1, 2, 1, 2, 1, 2, 1, 1], 2).unwrap();
        let scanner = Scanner::new(&set);
        let full = scanner.scan_full(&col, 1).unwrap();
        let mut summary = scanner.scan(&col, 1).unwrap();
        assert_eq!(full.records.as_ref().unwrap().len(), 56);
        summary.records = full.records.clone();
        assert_eq!(full, summary);
        assert_eq!(scanner.has_small_mono(col.colors(), 1), full.found());
    }
}
