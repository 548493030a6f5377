use alloc::vec::Vec;
use core::f64::consts::TAU;

use super::angle_bin;
use super::distance::{dedup_points, PointIndex};
use crate::math::{cis, C64};
use crate::modarith::gcd;

/// Cap on the size of an explicit pairwise sum or product.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Applies `op` to `budget` pairs of `A × B` spread evenly over the full
/// product, or to every pair when the product fits.
fn pairwise(a: &[C64], b: &[C64], budget: usize, op: impl Fn(C64, C64) -> C64) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let total = a.len() as u64 * b.len() as u64;
    let budget = budget.max(1) as u64;
    if total <= budget {
        let mut out = Vec::with_capacity(total as usize);
        for &x in a {
            out.extend(b.iter().map(|&y| op(x, y)));
        }
        return out;
    }
    let mut stride = total / budget;
    while gcd(stride, total) != 1 {
        stride += 1;
    }
    let nb = b.len() as u64;
    (0..budget)
        .map(|i| {
            let idx = ((i as u128 * stride as u128) % total as u128) as u64;
            op(a[(idx / nb) as usize], b[(idx % nb) as usize])
        })
        .collect()
}

pub fn minkowski_sum(a: &[C64], b: &[C64], budget: usize) -> Vec<C64> {
    pairwise(a, b, budget, |x, y| x + y)
}

pub fn minkowski_product(a: &[C64], b: &[C64], budget: usize) -> Vec<C64> {
    pairwise(a, b, budget, |x, y| x * y)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DihedralClosure {
    pub points: Vec<C64>,
    /// Set when the input was not closed under conjugation.
    pub conjugates_added: bool,
}

/// `{e(j/k)} ⊗ (A ∪ conj A)`, deduplicated at tolerance `1e-12·max|z|`.
pub fn dihedral_closure(a: &[C64], k: u64) -> DihedralClosure {
    let scale = a.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = 1e-12 * scale;
    let index = PointIndex::new(a);
    let conjugates_added = a.iter().any(|z| index.nearest_distance(z.conj()) > tol);
    let mut base = a.to_vec();
    if conjugates_added {
        base.extend(a.iter().map(|z| z.conj()));
    }
    let k = k.max(1);
    let mut points = Vec::with_capacity(base.len() * k as usize);
    for j in 0..k {
        let rot = cis(TAU * j as f64 / k as f64);
        points.extend(base.iter().map(|&z| rot * z));
    }
    DihedralClosure { points: dedup_points(&points, tol), conjugates_added }
}

/// `{λz : λ ∈ {0, 1/L, …, 1}, z ∈ A}`.
pub fn backward_cone(a: &[C64], grid: usize) -> Vec<C64> {
    let grid = grid.max(1);
    let mut out = Vec::with_capacity(a.len() * grid + 1);
    out.push(C64::new(0.0, 0.0));
    for i in 1..=grid {
        let lambda = i as f64 / grid as f64;
        out.extend(a.iter().map(|&z| z * lambda));
    }
    out
}

struct Envelope {
    best: Vec<Option<C64>>,
}

impl Envelope {
    fn new(bins: usize) -> Self {
        Self { best: alloc::vec![None; bins.max(1)] }
    }

    fn offer(&mut self, z: C64) {
        let bin = angle_bin(z, self.best.len());
        let slot = &mut self.best[bin];
        let r = z.norm_sqr();
        if slot.map_or(true, |w| r > w.norm_sqr()) {
            *slot = Some(z);
        }
    }

    fn finish(self) -> Vec<C64> {
        self.best.into_iter().flatten().collect()
    }
}

/// Per angle bin, the point of largest modulus, in increasing angle; empty
/// bins are omitted.
pub fn outer_boundary(a: &[C64], bins: usize) -> Vec<C64> {
    let mut env = Envelope::new(bins);
    a.iter().for_each(|&z| env.offer(z));
    env.finish()
}

/// `outer_boundary(A ⊕ B)` over every pair, without materialising the sum.
pub fn outer_boundary_of_sum(a: &[C64], b: &[C64], bins: usize) -> Vec<C64> {
    let mut env = Envelope::new(bins);
    for &x in a {
        b.iter().for_each(|&y| env.offer(x + y));
    }
    env.finish()
}

/// `outer_boundary(A ⊗ B)` over every pair, without materialising the product.
pub fn outer_boundary_of_product(a: &[C64], b: &[C64], bins: usize) -> Vec<C64> {
    let mut env = Envelope::new(bins);
    for &x in a {
        b.iter().for_each(|&y| env.offer(x * y));
    }
    env.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hausdorff_distance, sets_match};
    use alloc::vec;

    fn ring(n: usize, r: f64) -> Vec<C64> {
        (0..n).map(|i| cis(TAU * (i as f64 + 0.5) / n as f64) * r).collect()
    }

    #[test]
    fn identities() {
        let b = ring(7, 2.0);
        assert_eq!(minkowski_sum(&[C64::new(0.0, 0.0)], &b, DEFAULT_BUDGET), b);
        assert_eq!(minkowski_product(&[C64::new(1.0, 0.0)], &b, DEFAULT_BUDGET), b);
        let a = vec![C64::new(1.0, 2.0), C64::new(-3.0, 0.5)];
        let ab = minkowski_sum(&a, &b, DEFAULT_BUDGET);
        let ba = minkowski_sum(&b, &a, DEFAULT_BUDGET);
        assert!(sets_match(&ab, &ba, 1e-12));
    }

    #[test]
    fn budget_spreads_over_both_factors() {
        let a: Vec<C64> = (0..1000).map(|i| C64::new(i as f64, 0.0)).collect();
        let b: Vec<C64> = (0..1000).map(|i| C64::new(0.0, i as f64)).collect();
        let s = minkowski_sum(&a, &b, 10_000);
        assert_eq!(s.len(), 10_000);
        let max_re = s.iter().map(|z| z.re).fold(0.0, f64::max);
        let max_im = s.iter().map(|z| z.im).fold(0.0, f64::max);
        assert!(max_re > 990.0 && max_im > 990.0);
    }

    #[test]
    fn dihedral_examples() {
        let c = dihedral_closure(&[C64::new(1.0, 0.0)], 4);
        assert!(!c.conjugates_added);
        let expect = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)];
        assert!(sets_match(&c.points, &expect, 1e-12));
        assert_eq!(c.points.len(), 4);

        let a = vec![C64::new(1.0, 1.0), C64::new(1.0, -1.0), C64::new(2.0, 0.0)];
        let c1 = dihedral_closure(&a, 1);
        assert!(!c1.conjugates_added);
        assert!(sets_match(&c1.points, &a, 0.0));

        let c = dihedral_closure(&[C64::new(1.0, 0.5)], 3);
        assert!(c.conjugates_added);
        assert_eq!(c.points.len(), 6);
        let again = dihedral_closure(&c.points, 3);
        assert!(!again.conjugates_added);
        assert!(hausdorff_distance(&again.points, &c.points) < 1e-12);
    }

    #[test]
    fn roots_times_conjugate_closed_set_is_dihedral_closure() {
        let a = vec![C64::new(1.0, 0.3), C64::new(1.0, -0.3), C64::new(0.2, 0.0)];
        let roots: Vec<C64> = (1..=5).map(|j| cis(TAU * j as f64 / 5.0)).collect();
        let prod = minkowski_product(&roots, &a, DEFAULT_BUDGET);
        assert!(sets_match(&prod, &dihedral_closure(&a, 5).points, 1e-12));
    }

    #[test]
    fn cone_examples() {
        let c = backward_cone(&[C64::new(1.0, 0.0)], 2);
        assert!(sets_match(&c, &[C64::new(0.0, 0.0), C64::new(0.5, 0.0), C64::new(1.0, 0.0)], 1e-15));
        let a = ring(64, 3.0);
        let cone = backward_cone(&a, 10);
        assert!(sets_match(&outer_boundary(&cone, 64), &outer_boundary(&a, 64), 1e-12));
        let cc = backward_cone(&cone, 10);
        assert!(sets_match(&outer_boundary(&cc, 64), &outer_boundary(&cone, 64), 1e-12));
    }

    #[test]
    fn outer_boundary_keeps_outer_ring() {
        let circle = ring(256, 1.0);
        assert_eq!(outer_boundary(&circle, 256).len(), 256);
        let mut disk = Vec::new();
        for r in 1..=10 {
            disk.extend(ring(256, r as f64 / 10.0));
        }
        let ob = outer_boundary(&disk, 256);
        assert_eq!(ob.len(), 256);
        assert!(ob.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn streamed_boundaries_agree_with_materialised() {
        let a: Vec<C64> = (0..40).map(|i| cis(i as f64 * 0.37) * (1.0 + 0.3 * libm::sin(i as f64))).collect();
        let b = ring(30, 0.7);
        let sum = minkowski_sum(&a, &b, DEFAULT_BUDGET);
        assert_eq!(outer_boundary_of_sum(&a, &b, 128), outer_boundary(&sum, 128));
        let prod = minkowski_product(&a, &b, DEFAULT_BUDGET);
        assert_eq!(outer_boundary_of_product(&a, &b, 128), outer_boundary(&prod, 128));
    }
}
