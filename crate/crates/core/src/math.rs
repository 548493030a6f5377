//! Floating-point helpers that work without `std`.

use alloc::vec::Vec;
use core::f64::consts::TAU;

pub use num_complex::Complex64 as C64;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn cis(theta: f64) -> C64 {
    let (s, c) = libm::sincos(theta);
    C64::new(c, s)
}

/// `e(num/den) = exp(2πi·num/den)` with the fraction reduced exactly first.
#[inline]
pub fn e_frac(num: u64, den: u64) -> C64 {
    let r = num % den;
    cis(TAU * (r as f64) / (den as f64))
}

/// Angle of `z` in `[0, 2π)`.
#[inline]
pub fn angle(z: C64) -> f64 {
    let a = atan2(z.im, z.re);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// Table of the `n`-th roots of unity, `table[k] = e(k/n)`.
#[derive(Debug, Clone)]
pub struct RootTable {
    n: u64,
    roots: Vec<C64>,
}

impl RootTable {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "root table needs a positive modulus");
        let roots = (0..n).map(|k| e_frac(k, n)).collect();
        Self { n, roots }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// `e(k/n)`; `k` must already be reduced.
    #[inline]
    pub fn get(&self, k: u64) -> C64 {
        self.roots[k as usize]
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: C64,
    carry: C64,
}

#[inline]
fn two_sum(sum: &mut f64, carry: &mut f64, x: f64) {
    let t = *sum + x;
    if libm::fabs(*sum) >= libm::fabs(x) {
        *carry += (*sum - t) + x;
    } else {
        *carry += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: C64) {
        two_sum(&mut self.sum.re, &mut self.carry.re, z.re);
        two_sum(&mut self.sum.im, &mut self.carry.im, z.im);
    }

    pub fn value(&self) -> C64 {
        self.sum + self.carry
    }
}

impl core::iter::FromIterator<C64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = C64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_table() {
        let t = RootTable::new(4);
        assert!((t.get(1) - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((t.get(2) + C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compensated_sum_cancels() {
        let mut acc = CompensatedSum::new();
        acc.add(C64::new(1e16, 0.0));
        acc.add(C64::new(1.0, 0.0));
        acc.add(C64::new(-1e16, 0.0));
        assert_eq!(acc.value().re, 1.0);
    }

    #[test]
    fn angle_is_in_range() {
        assert!((angle(C64::new(0.0, -1.0)) - 1.5 * core::f64::consts::PI).abs() < 1e-15);
        assert_eq!(angle(C64::new(2.0, 0.0)), 0.0);
    }
}
