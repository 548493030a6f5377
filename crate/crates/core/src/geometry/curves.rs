use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use super::minkowski::outer_boundary_of_sum;
use crate::math::{cis, C64};
use crate::modarith::is_prime;
use crate::{Error, Result};

/// An ordered polyline of plane points.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundaryCurve {
    pub points: Vec<C64>,
    /// A closed curve joins its last point back to its first.
    pub closed: bool,
}

impl BoundaryCurve {
    pub fn closed(points: Vec<C64>) -> Self {
        Self { points, closed: true }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Consecutive point pairs, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (C64, C64)> + '_ {
        let n = self.points.len();
        let m = if self.closed || n < 2 { n } else { n - 1 };
        (0..if n < 2 { 0 } else { m }).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }
}

/// `z(θ) = (k−1)e^{iθ} + e^{−i(k−1)θ}` at `samples` equally spaced angles.
pub fn hypocycloid_boundary(k: u64, samples: usize) -> Result<BoundaryCurve> {
    if k < 2 {
        return Err(Error::InvalidArgs("hypocycloid needs k >= 2".into()));
    }
    if (samples as u64) < 16 * k {
        return Err(Error::InvalidArgs(alloc::format!("need at least {} samples", 16 * k)));
    }
    let km1 = (k - 1) as f64;
    let points = (0..samples)
        .map(|i| {
            let theta = TAU * i as f64 / samples as f64;
            cis(theta) * km1 + cis(-km1 * theta)
        })
        .collect();
    Ok(BoundaryCurve::closed(points))
}

/// Regular `k`-gon with vertices `k·e(j/k)`.
pub fn polygon_boundary(k: u64) -> Result<BoundaryCurve> {
    if k < 3 {
        return Err(Error::InvalidArgs("polygon needs k >= 3".into()));
    }
    let points = (0..k).map(|j| cis(TAU * j as f64 / k as f64) * k as f64).collect();
    Ok(BoundaryCurve::closed(points))
}

fn check_prime_pair(k: u64, l: u64) -> Result<()> {
    if k >= l {
        return Err(Error::InvalidArgs(alloc::format!("need k < l, got k = {k}, l = {l}")));
    }
    for q in [k, l] {
        if q < 3 || !is_prime(q) {
            return Err(Error::InvalidArgs(alloc::format!("{q} is not an odd prime")));
        }
    }
    Ok(())
}

/// The `kℓ`-fold dihedral closure of the two segments joining
/// `kℓ·e^{iπ(1/k−1/ℓ)}` to `kℓ·e^{iπ(1/k+1/ℓ)}` and to `kℓ·cos(π/k)/cos(π/ℓ)`.
pub fn product_polygon_segments(k: u64, l: u64) -> Result<Vec<(C64, C64)>> {
    check_prime_pair(k, l)?;
    let (a, b) = (PI / k as f64, PI / l as f64);
    let (ta, tb) = (libm::tan(a), libm::tan(b));
    let scale = (k * l) as f64 * libm::cos(a) * libm::cos(b);
    let z1 = C64::new(1.0 + tb * tb, 0.0) * scale;
    let z2 = C64::new(1.0 + ta * tb, ta - tb) * scale;
    let z3 = C64::new(1.0 - ta * tb, ta + tb) * scale;
    let base = [(z2, z3), (z2, z1)];
    let kl = k * l;
    let mut out = Vec::with_capacity(4 * kl as usize);
    for j in 0..kl {
        let rot = cis(TAU * j as f64 / kl as f64);
        for &(p, q) in &base {
            out.push((rot * p, rot * q));
            out.push((rot * p.conj(), rot * q.conj()));
        }
    }
    Ok(out)
}

/// Largest `r` with `r·e^{iφ}` on the segment `[p, q]`.
pub(crate) fn ray_hit(u: C64, p: C64, q: C64) -> Option<f64> {
    let cross = |a: C64, b: C64| a.re * b.im - a.im * b.re;
    let dir = q - p;
    let denom = cross(u, dir);
    let scale = dir.norm().max(p.norm()).max(1e-300);
    if denom.abs() <= 1e-14 * scale {
        // segment parallel to the ray: only counts if it lies on it
        if cross(u, p).abs() <= 1e-12 * scale {
            let r = (u.re * p.re + u.im * p.im).max(u.re * q.re + u.im * q.im);
            return (r >= 0.0).then_some(r);
        }
        return None;
    }
    let s = -cross(u, p) / denom;
    if !(-1e-12..=1.0 + 1e-12).contains(&s) {
        return None;
    }
    let hit = p + dir * s.clamp(0.0, 1.0);
    let r = u.re * hit.re + u.im * hit.im;
    (r >= 0.0).then_some(r)
}

/// Outer envelope of [`product_polygon_segments`], sampled at `samples`
/// equally spaced angles.
pub fn product_polygon_boundary(k: u64, l: u64, samples: usize) -> Result<BoundaryCurve> {
    let segs = product_polygon_segments(k, l)?;
    let samples = samples.max(16);
    let points = (0..samples)
        .filter_map(|i| {
            let u = cis(TAU * i as f64 / samples as f64);
            segs.iter()
                .filter_map(|&(p, q)| ray_hit(u, p, q))
                .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))))
                .map(|r| u * r)
        })
        .collect();
    Ok(BoundaryCurve::closed(points))
}

/// Outer boundary of `H_l^{⊕copies}`, accumulated one summand at a time.
pub fn minkowski_power_boundary(l: u64, copies: u64, samples: usize, bins: usize) -> Result<BoundaryCurve> {
    if copies == 0 {
        return Err(Error::InvalidArgs("need at least one summand".into()));
    }
    let h = hypocycloid_boundary(l, samples)?;
    let mut acc = h.points.clone();
    for _ in 1..copies {
        acc = outer_boundary_of_sum(&acc, &h.points, bins);
    }
    Ok(BoundaryCurve::closed(acc))
}

/// Number of strict local maxima of `|z|` around a closed curve.
pub fn cusp_count(curve: &BoundaryCurve) -> usize {
    let r: Vec<f64> = curve.points.iter().map(|z| z.norm()).collect();
    let n = r.len();
    if n < 3 {
        return 0;
    }
    (0..n)
        .filter(|&i| {
            let prev = r[(i + n - 1) % n];
            let next = r[(i + 1) % n];
            r[i] > prev + 1e-12 && r[i] >= next
        })
        .count()
}
