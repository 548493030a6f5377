use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use super::curves::{hypocycloid_boundary, polygon_boundary, ray_hit, BoundaryCurve};
use super::minkowski::outer_boundary;
use crate::math::{angle, cis, C64};
use crate::{Error, Result};

pub const DEFAULT_BINS: usize = 4096;

/// A compact region star-shaped about 0, stored as its boundary polyline in
/// angular order together with the radius sampled in `B` angular bins.
///
/// Membership is decided against the polyline itself: the bin radii are a
/// summary, the polyline edge crossing the query ray is looked up by binary
/// search over the cumulative angles.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Radial(RadialEnvelope),
    /// The real segment `[-half_length, half_length]` (the degenerate `H_2`).
    Segment { half_length: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialEnvelope {
    vertices: Vec<C64>,
    /// Unwrapped vertex angles; `angles[n]` closes the loop at `angles[0] + 2π`.
    angles: Vec<f64>,
    bins: Vec<f64>,
}

fn wrap(delta: f64) -> f64 {
    let mut d = delta % TAU;
    if d > PI {
        d -= TAU;
    } else if d <= -PI {
        d += TAU;
    }
    d
}

fn unwrap_angles(points: &[C64]) -> Vec<f64> {
    let n = points.len();
    let mut angles = Vec::with_capacity(n + 1);
    angles.push(angle(points[0]));
    for i in 1..=n {
        let prev = angle(points[i - 1]);
        let cur = angle(points[i % n]);
        angles.push(angles[i - 1] + wrap(cur - prev));
    }
    angles
}

impl RadialEnvelope {
    fn build(points: &[C64], bins: usize) -> Result<Self> {
        if points.len() < 3 || bins == 0 {
            return Err(Error::NotStarShaped);
        }
        let scale = points.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if points.iter().any(|z| z.norm() <= 1e-12 * scale.max(1.0)) {
            return Err(Error::NotStarShaped);
        }
        let mut vertices = points.to_vec();
        let mut angles = unwrap_angles(&vertices);
        let total = angles[vertices.len()] - angles[0];
        if (total + TAU).abs() < 1e-6 {
            vertices.reverse();
            angles = unwrap_angles(&vertices);
        } else if (total - TAU).abs() >= 1e-6 {
            return Err(Error::NotStarShaped);
        }
        if angles.windows(2).any(|w| w[1] < w[0] - 1e-9) {
            return Err(Error::NotStarShaped);
        }
        let mut env = Self { vertices, angles, bins: Vec::new() };
        env.bins = (0..bins).map(|b| env.radius_at(TAU * b as f64 / bins as f64)).collect();
        Ok(env)
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    /// Radius sampled at the start angle of each bin.
    pub fn bins(&self) -> &[f64] {
        &self.bins
    }

    /// Largest distance from 0 along the ray at angle `phi`.
    pub fn radius_at(&self, phi: f64) -> f64 {
        let n = self.vertices.len();
        let start = self.angles[0];
        let mut phi = start + (phi - start) - TAU * libm::floor((phi - start) / TAU);
        if phi >= start + TAU {
            phi = start;
        }
        // first edge whose end angle reaches phi
        let i = self.angles[1..].partition_point(|&a| a < phi).min(n - 1);
        let u = cis(phi);
        let mut best: f64 = 0.0;
        let tol = 1e-9;
        let mut check = |e: usize| {
            let (a0, a1) = (self.angles[e], self.angles[e + 1]);
            if a0 - tol <= phi && phi <= a1 + tol {
                if let Some(r) = ray_hit(u, self.vertices[e], self.vertices[(e + 1) % n]) {
                    best = best.max(r);
                }
            }
        };
        check(i);
        // neighbours sharing the angle (vertices on the ray, radial edges)
        let mut j = i;
        while j > 0 && self.angles[j] >= phi - tol {
            j -= 1;
            check(j);
        }
        let mut j = i + 1;
        while j < n && self.angles[j] <= phi + tol {
            check(j);
            j += 1;
        }
        // the wrap-around seam
        if phi - start <= tol {
            check(n - 1);
        }
        if start + TAU - phi <= tol {
            check(0);
        }
        best
    }
}

impl Region {
    /// `H_k`; `H_2` is the segment `[-2, 2]`.
    pub fn hypocycloid(k: u64, bins: usize) -> Result<Self> {
        if k == 2 {
            return Ok(Region::Segment { half_length: 2.0 });
        }
        // sample count a multiple of k so every cusp is a vertex
        let samples = (k as usize) * (8192usize.max(16 * k as usize)).div_ceil(k as usize);
        region_from_boundary(&hypocycloid_boundary(k, samples)?, bins)
    }

    /// `P_k`.
    pub fn polygon(k: u64, bins: usize) -> Result<Self> {
        region_from_boundary(&polygon_boundary(k)?, bins)
    }

    /// Region bounded by the outer boundary of a point cloud.
    pub fn from_points(points: &[C64], bins: usize) -> Result<Self> {
        let ring = outer_boundary(points, bins);
        region_from_boundary(&BoundaryCurve::closed(ring), bins)
    }

    pub fn radius_at(&self, phi: f64) -> f64 {
        match self {
            Region::Radial(env) => env.radius_at(phi),
            Region::Segment { half_length } => {
                if libm::sin(phi).abs() < 1e-15 {
                    *half_length
                } else {
                    0.0
                }
            }
        }
    }

    pub fn contains(&self, z: C64, tol: f64) -> bool {
        match self {
            Region::Radial(env) => z.norm() <= env.radius_at(angle(z)) + tol,
            Region::Segment { half_length } => z.im.abs() <= tol && z.re.abs() <= half_length + tol,
        }
    }

    /// How far `z` lies outside along its ray (0 when inside).
    pub fn excess(&self, z: C64) -> f64 {
        match self {
            Region::Radial(env) => (z.norm() - env.radius_at(angle(z))).max(0.0),
            Region::Segment { half_length } => z.im.abs().max(z.re.abs() - half_length).max(0.0),
        }
    }
}

/// Builds the radial envelope of a closed curve winding once around 0.
pub fn region_from_boundary(curve: &BoundaryCurve, bins: usize) -> Result<Region> {
    Ok(Region::Radial(RadialEnvelope::build(&curve.points, bins)?))
}

pub fn contains(region: &Region, z: C64, tol: f64) -> bool {
    region.contains(z, tol)
}
