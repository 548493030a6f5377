use alloc::vec::Vec;

use crate::math::C64;

/// Uniform grid over a point set for nearest-neighbour queries.
#[derive(Debug, Clone)]
pub struct PointIndex {
    points: Vec<C64>,
    origin: C64,
    cell: f64,
    nx: usize,
    ny: usize,
    starts: Vec<u32>,
    order: Vec<u32>,
}

impl PointIndex {
    pub fn new(points: &[C64]) -> Self {
        let n = points.len();
        let (mut lo, mut hi) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        if let Some(&first) = points.first() {
            lo = first;
            hi = first;
            for z in points {
                lo.re = lo.re.min(z.re);
                lo.im = lo.im.min(z.im);
                hi.re = hi.re.max(z.re);
                hi.im = hi.im.max(z.im);
            }
        }
        let (w, h) = ((hi.re - lo.re).max(1e-300), (hi.im - lo.im).max(1e-300));
        let target = libm::ceil(libm::sqrt(n.max(1) as f64)).min(4096.0);
        let cell = (w.max(h) / target).max(w.min(h) / target).max(1e-300);
        let nx = ((w / cell) as usize + 1).min(8192);
        let ny = ((h / cell) as usize + 1).min(8192);
        let cell = cell.max(w / nx as f64).max(h / ny as f64);
        let mut index = Self { points: points.to_vec(), origin: lo, cell, nx, ny, starts: Vec::new(), order: Vec::new() };
        let keys: Vec<usize> = points.iter().map(|&z| index.key(index.cell_of(z))).collect();
        let mut counts = alloc::vec![0u32; nx * ny + 1];
        for &k in &keys {
            counts[k + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let mut fill = counts.clone();
        let mut order = alloc::vec![0u32; n];
        for (i, &k) in keys.iter().enumerate() {
            order[fill[k] as usize] = i as u32;
            fill[k] += 1;
        }
        index.starts = counts;
        index.order = order;
        index
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn cell_of(&self, z: C64) -> (usize, usize) {
        let fx = libm::floor((z.re - self.origin.re) / self.cell);
        let fy = libm::floor((z.im - self.origin.im) / self.cell);
        let cx = if fx.is_nan() { 0.0 } else { fx.clamp(0.0, (self.nx - 1) as f64) };
        let cy = if fy.is_nan() { 0.0 } else { fy.clamp(0.0, (self.ny - 1) as f64) };
        (cx as usize, cy as usize)
    }

    fn key(&self, (cx, cy): (usize, usize)) -> usize {
        cy * self.nx + cx
    }

    fn scan(&self, cx: usize, cy: usize, z: C64, best: &mut (f64, usize)) {
        let k = self.key((cx, cy));
        for &i in &self.order[self.starts[k] as usize..self.starts[k + 1] as usize] {
            let d = (self.points[i as usize] - z).norm_sqr();
            if d < best.0 {
                *best = (d, i as usize);
            }
        }
    }

    /// Index and distance of the closest stored point.
    pub fn nearest(&self, z: C64) -> Option<(usize, f64)> {
        if self.points.is_empty() {
            return None;
        }
        let (cx, cy) = self.cell_of(z);
        let (cx, cy) = (cx as isize, cy as isize);
        let mut best = (f64::INFINITY, 0usize);
        let max_ring = self.nx.max(self.ny) as isize;
        for r in 0..=max_ring {
            if best.0.is_finite() {
                let bound = (r - 1).max(0) as f64 * self.cell;
                if bound * bound > best.0 {
                    break;
                }
            }
            let in_x = |x: isize| x >= 0 && x < self.nx as isize;
            let in_y = |y: isize| y >= 0 && y < self.ny as isize;
            for x in cx - r..=cx + r {
                if !in_x(x) {
                    continue;
                }
                for y in [cy - r, cy + r] {
                    if in_y(y) {
                        self.scan(x as usize, y as usize, z, &mut best);
                    }
                    if r == 0 {
                        break;
                    }
                }
            }
            for y in cy - r + 1..cy + r {
                if !in_y(y) {
                    continue;
                }
                for x in [cx - r, cx + r] {
                    if in_x(x) {
                        self.scan(x as usize, y as usize, z, &mut best);
                    }
                }
            }
        }
        Some((best.1, libm::sqrt(best.0)))
    }

    /// Distance to the closest stored point, `∞` when empty.
    pub fn nearest_distance(&self, z: C64) -> f64 {
        self.nearest(z).map_or(f64::INFINITY, |(_, d)| d)
    }
}

/// `max_{a∈A} min_{b∈B} |a − b|`.
pub fn directed_hausdorff(a: &[C64], b: &[C64]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let index = PointIndex::new(b);
    a.iter().map(|&z| index.nearest_distance(z)).fold(0.0, f64::max)
}

pub fn hausdorff_distance(a: &[C64], b: &[C64]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

pub fn sets_match(a: &[C64], b: &[C64], tol: f64) -> bool {
    hausdorff_distance(a, b) <= tol
}

/// Drops every point within `tol` of an earlier kept point.
pub fn dedup_points(points: &[C64], tol: f64) -> Vec<C64> {
    let mut kept: Vec<C64> = Vec::new();
    if points.is_empty() {
        return kept;
    }
    let index = PointIndex::new(points);
    let mut dropped = alloc::vec![false; points.len()];
    for (i, &z) in points.iter().enumerate() {
        if dropped[i] {
            continue;
        }
        kept.push(z);
        for j in index.within(z, tol) {
            if j > i {
                dropped[j] = true;
            }
        }
    }
    kept
}

impl PointIndex {
    /// Indices of stored points within `radius` of `z`.
    pub fn within(&self, z: C64, radius: f64) -> Vec<usize> {
        let mut out = Vec::new();
        if self.points.is_empty() {
            return out;
        }
        let (x0, y0) = self.cell_of(z - C64::new(radius, radius));
        let (x1, y1) = self.cell_of(z + C64::new(radius, radius));
        for cy in y0..=y1 {
            for cx in x0..=x1 {
                let k = self.key((cx, cy));
                for &i in &self.order[self.starts[k] as usize..self.starts[k + 1] as usize] {
                    if (self.points[i as usize] - z).norm() <= radius {
                        out.push(i as usize);
                    }
                }
            }
        }
        out
    }
}
