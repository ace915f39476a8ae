use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::efficiency::Regime;
use crate::error::{Error, Result};

pub type Point = [f64; 2];

/// Targets scattered over a periodic square arena `[0, arena_side)^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetField {
    pub positions: Vec<Point>,
    pub arena_side: f64,
    /// Target density used to generate the field.
    pub density: f64,
    pub regime: Regime,
}

impl TargetField {
    /// Build a field from explicit positions, wrapping them into the arena.
    pub fn from_positions(positions: Vec<Point>, arena_side: f64, regime: Regime) -> Result<Self> {
        if !(arena_side > 0.0 && arena_side.is_finite()) {
            return Err(Error::invalid("arena_side", format!("{arena_side} must be positive")));
        }
        let positions: Vec<Point> = positions
            .into_iter()
            .map(|[x, y]| [wrap(x, arena_side), wrap(y, arena_side)])
            .collect();
        let density = positions.len() as f64 / (arena_side * arena_side);
        Ok(Self {
            positions,
            arena_side,
            density,
            regime,
        })
    }

    /// Kinetic mean free path `1 / (2 r_v rho)`.
    pub fn mean_free_path(&self, r_v: f64) -> f64 {
        1.0 / (2.0 * r_v * self.density)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

pub(crate) fn wrap(x: f64, side: f64) -> f64 {
    let w = x.rem_euclid(side);
    // rem_euclid can round up to `side` itself for tiny negative inputs.
    if w >= side {
        0.0
    } else {
        w
    }
}

/// Minimum-image distance on the torus.
pub fn periodic_distance(a: Point, b: Point, side: f64) -> f64 {
    let mut d2 = 0.0;
    for i in 0..2 {
        let mut d = (a[i] - b[i]).rem_euclid(side);
        if d > side / 2.0 {
            d = side - d;
        }
        d2 += d * d;
    }
    d2.sqrt()
}

/// Poisson number of targets with mean `density * arena_side^2`, placed
/// i.i.d. uniformly.
pub fn generate_targets<R: Rng + ?Sized>(
    density: f64,
    arena_side: f64,
    regime: Regime,
    rng: &mut R,
) -> Result<TargetField> {
    if !(density > 0.0 && density.is_finite()) {
        return Err(Error::invalid("density", format!("{density} must be positive")));
    }
    if !(arena_side > 0.0 && arena_side.is_finite()) {
        return Err(Error::invalid("arena_side", format!("{arena_side} must be positive")));
    }
    let expected = density * arena_side * arena_side;
    if expected < 1.0 {
        return Err(Error::ArenaTooSmall { expected });
    }
    let count = Poisson::new(expected)
        .map_err(|e| Error::invalid("density", e.to_string()))?
        .sample(rng) as usize;
    let positions = (0..count)
        .map(|_| {
            [
                wrap(rng.random::<f64>() * arena_side, arena_side),
                wrap(rng.random::<f64>() * arena_side, arena_side),
            ]
        })
        .collect();
    Ok(TargetField {
        positions,
        arena_side,
        density,
        regime,
    })
}

/// Uniform-cell spatial hash over the live targets of a field.
#[derive(Clone, Debug)]
pub(crate) struct TargetIndex {
    side: f64,
    ncell: usize,
    cell: f64,
    cells: Vec<Vec<u32>>,
    positions: Vec<Point>,
    alive: usize,
}

impl TargetIndex {
    /// Cells hold about one target each but are never narrower than
    /// `min_cell` (the detection radius).
    pub fn new(field: &TargetField, min_cell: f64) -> Self {
        let side = field.arena_side;
        let target_cell = side / (field.positions.len().max(1) as f64).sqrt();
        let ncell = ((side / target_cell.max(min_cell)).floor() as usize).clamp(1, 2048);
        let cell = side / ncell as f64;
        let mut cells = vec![Vec::new(); ncell * ncell];
        for (i, p) in field.positions.iter().enumerate() {
            let cx = ((p[0] / cell) as usize).min(ncell - 1);
            let cy = ((p[1] / cell) as usize).min(ncell - 1);
            cells[cy * ncell + cx].push(i as u32);
        }
        Self {
            side,
            ncell,
            cell,
            cells,
            positions: field.positions.clone(),
            alive: field.positions.len(),
        }
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn position(&self, i: usize) -> Point {
        self.positions[i]
    }

    pub fn remove(&mut self, i: usize) {
        let p = self.positions[i];
        let cx = ((p[0] / self.cell) as usize).min(self.ncell - 1);
        let cy = ((p[1] / self.cell) as usize).min(self.ncell - 1);
        let bucket = &mut self.cells[cy * self.ncell + cx];
        if let Some(k) = bucket.iter().position(|&j| j as usize == i) {
            bucket.swap_remove(k);
            self.alive -= 1;
        }
    }

    /// Visit every live target in cells overlapping the (unwrapped) box.
    fn for_each_in_box(&self, lo: Point, hi: Point, mut f: impl FnMut(usize)) {
        let n = self.ncell as i64;
        let range = |a: f64, b: f64| {
            let i0 = (a / self.cell).floor() as i64;
            let i1 = (b / self.cell).floor() as i64;
            // A box wider than the arena only needs each cell once.
            (i0, i1.min(i0 + n - 1))
        };
        let (x0, x1) = range(lo[0], hi[0]);
        let (y0, y1) = range(lo[1], hi[1]);
        for cy in y0..=y1 {
            let wy = cy.rem_euclid(n) as usize;
            for cx in x0..=x1 {
                let wx = cx.rem_euclid(n) as usize;
                for &j in &self.cells[wy * self.ncell + wx] {
                    f(j as usize);
                }
            }
        }
    }

    /// Image of target `i` closest to `near`.
    fn image(&self, i: usize, near: Point) -> Point {
        let q = self.positions[i];
        [
            q[0] + self.side * ((near[0] - q[0]) / self.side).round(),
            q[1] + self.side * ((near[1] - q[1]) / self.side).round(),
        ]
    }

    /// Nearest live target within `radius` of `p` (wrapped coordinates),
    /// returned with the image used.
    pub fn nearest_within(&self, p: Point, radius: f64) -> Option<(usize, Point, f64)> {
        let mut best: Option<(usize, Point, f64)> = None;
        self.for_each_in_box([p[0] - radius, p[1] - radius], [p[0] + radius, p[1] + radius], |j| {
            let q = self.image(j, p);
            let d = ((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2)).sqrt();
            if d <= radius && best.is_none_or(|(bj, _, bd)| d < bd || (d == bd && j < bj)) {
                best = Some((j, q, d));
            }
        });
        best
    }

    /// First point along `start + s * dir`, `0 <= s <= length`, that comes
    /// within `radius` of a live target. Returns the target and `s`.
    pub fn first_interception(
        &self,
        start: Point,
        dir: Point,
        length: f64,
        radius: f64,
    ) -> Option<(usize, f64)> {
        if self.alive == 0 {
            return None;
        }
        let piece = self.cell;
        let mut s0 = 0.0;
        while s0 < length {
            let s1 = (s0 + piece).min(length);
            let a = [start[0] + s0 * dir[0], start[1] + s0 * dir[1]];
            let b = [start[0] + s1 * dir[0], start[1] + s1 * dir[1]];
            let lo = [a[0].min(b[0]) - radius, a[1].min(b[1]) - radius];
            let hi = [a[0].max(b[0]) + radius, a[1].max(b[1]) + radius];
            let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
            let mut best: Option<(usize, f64)> = None;
            self.for_each_in_box(lo, hi, |j| {
                let q = self.image(j, mid);
                let w = [q[0] - start[0], q[1] - start[1]];
                let t = w[0] * dir[0] + w[1] * dir[1];
                let h2 = w[0] * w[0] + w[1] * w[1] - t * t;
                let r2 = radius * radius;
                if h2 > r2 {
                    return;
                }
                let half = (r2 - h2).sqrt();
                if t + half < 0.0 {
                    return;
                }
                let s = (t - half).max(0.0);
                if s <= s1 && best.is_none_or(|(bj, bs)| s < bs || (s == bs && j < bj)) {
                    best = Some((j, s));
                }
            });
            if best.is_some() {
                return best;
            }
            s0 = s1;
        }
        None
    }
}
