//! Seeded random point sets.
//!
//! All randomness goes through ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! an explicit `u64`, so every sample can be replayed from its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{Orientation, Point, PointSet};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn orient(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> Orientation {
    let det = (q.0 - p.0) as i128 * (r.1 - p.1) as i128 - (q.1 - p.1) as i128 * (r.0 - p.0) as i128;
    match det.signum() {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

/// Whether `p` can join `pts` without creating a duplicate or a collinear
/// triple. Entries equal to `skip` are ignored.
fn fits(pts: &[(i64, i64)], p: (i64, i64), skip: Option<usize>) -> bool {
    let others: Vec<(i64, i64)> = pts
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .map(|(_, &q)| q)
        .collect();
    if others.contains(&p) {
        return false;
    }
    for i in 0..others.len() {
        for j in i + 1..others.len() {
            if orient(others[i], others[j], p) == Orientation::Collinear {
                return false;
            }
        }
    }
    true
}

fn to_set(pts: &[(i64, i64)]) -> PointSet {
    PointSet::new_unchecked(pts.iter().map(|&(x, y)| Point::new(x, y)).collect())
}

/// `n` points drawn uniformly from the `grid × grid` lattice, resampling any
/// point that would be a duplicate or complete a collinear triple.
pub fn random_general_position<R: Rng>(n: usize, grid: i64, rng: &mut R) -> Result<PointSet> {
    if grid < 2 || (n > 2 * grid as usize) {
        // no-three-in-line sets on a G×G grid have at most 2G points
        return Err(Error::InvalidArgument(format!(
            "cannot place {n} points in general position on a {grid}x{grid} grid"
        )));
    }
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while pts.len() < n {
        let p = (rng.random_range(0..grid), rng.random_range(0..grid));
        if fits(&pts, p, None) {
            pts.push(p);
        }
        attempts += 1;
        if attempts > 1_000_000 {
            return Err(Error::InvalidArgument(format!(
                "gave up placing {n} points on a {grid}x{grid} grid"
            )));
        }
    }
    Ok(to_set(&pts))
}

/// Source of candidate point sets for witness search.
pub trait Sampler {
    fn sample(&mut self, n: usize) -> Result<PointSet>;
    /// A nearby set of the same size, still in general position.
    fn perturb(&mut self, set: &PointSet) -> PointSet;
}

/// Uniform lattice sampling with single-point moves of bounded radius.
#[derive(Debug, Clone)]
pub struct GridSampler {
    pub grid: i64,
    pub radius: i64,
    rng: ChaCha8Rng,
}

impl GridSampler {
    pub fn new(grid: i64, seed: u64) -> Self {
        GridSampler { grid, radius: (grid / 8).max(2), rng: rng_from_seed(seed) }
    }
}

impl Sampler for GridSampler {
    fn sample(&mut self, n: usize) -> Result<PointSet> {
        random_general_position(n, self.grid, &mut self.rng)
    }

    fn perturb(&mut self, set: &PointSet) -> PointSet {
        let mut pts: Vec<(i64, i64)> = set
            .points()
            .iter()
            .map(|p| {
                use num_traits::ToPrimitive;
                (p.x.to_i64().unwrap_or(0), p.y.to_i64().unwrap_or(0))
            })
            .collect();
        if pts.is_empty() {
            return set.clone();
        }
        for _ in 0..1000 {
            let i = self.rng.random_range(0..pts.len());
            let dx = self.rng.random_range(-self.radius..=self.radius);
            let dy = self.rng.random_range(-self.radius..=self.radius);
            let p = (
                (pts[i].0 + dx).clamp(0, self.grid - 1),
                (pts[i].1 + dy).clamp(0, self.grid - 1),
            );
            if p != pts[i] && fits(&pts, p, Some(i)) {
                pts[i] = p;
                return to_set(&pts);
            }
        }
        set.clone()
    }
}
