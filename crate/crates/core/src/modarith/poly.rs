use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{divisors, totient};
use crate::{Error, Result};

/// Dense integer polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::one();
        Self { coeffs }
    }

    /// `x^d − 1`.
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut p = Self::monomial(d);
        p.coeffs[0] -= 1;
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Long division by a monic polynomial; returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = core::mem::take(&mut rem[i + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs[..dd].iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem_monic(divisor);
        assert!(r.is_zero(), "division is not exact");
        q
    }

    pub fn rem_monic(&self, divisor: &Self) -> Self {
        self.div_rem_monic(divisor).1
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.sign() == num_bigint::Sign::Minus { " - " } else { " + " })?;
            } else if c.sign() == num_bigint::Sign::Minus {
                f.write_str("-")?;
            }
            first = false;
            let a = c.magnitude();
            let unit = a.is_one();
            match i {
                0 => write!(f, "{a}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{a}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn cyclotomic_memo(d: u64, memo: &mut BTreeMap<u64, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&d) {
        return p.clone();
    }
    let mut p = IntPoly::x_pow_minus_one(d as usize);
    for e in divisors(d) {
        if e < d {
            let phi_e = cyclotomic_memo(e, memo);
            p = p.div_exact(&phi_e);
        }
    }
    memo.insert(d, p.clone());
    p
}

/// The `d`-th cyclotomic polynomial, by exact division of `x^d − 1` by the
/// lower-index cyclotomics dividing it.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    cyclotomic_memo(d, &mut BTreeMap::new())
}

/// Integer exponents expressing each `x^k` (`k = 1..=d`) in the power basis
/// `1, x, …, x^{φ(d)−1}` modulo `Φ_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    d: u64,
    phi_d: usize,
    /// `columns[k-1][j-1] = c_{j,k}`.
    columns: Vec<Vec<i64>>,
}

impl ExponentMatrix {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn phi_d(&self) -> usize {
        self.phi_d
    }

    /// `c_{j,k}` with 1-based indices.
    pub fn entry(&self, j: usize, k: usize) -> i64 {
        self.columns[k - 1][j - 1]
    }

    /// Column `k` (1-based) as the coefficient vector of `x^k mod Φ_d`.
    pub fn column(&self, k: usize) -> &[i64] {
        &self.columns[k - 1]
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }
}

pub fn exponent_matrix(d: u64) -> Result<ExponentMatrix> {
    if d == 0 {
        return Err(Error::InvalidArgs("degree must be positive".into()));
    }
    let phi = cyclotomic(d);
    let phi_d = totient(d) as usize;
    debug_assert_eq!(phi.degree(), Some(phi_d));
    let mut columns = Vec::with_capacity(d as usize);
    // x^k mod Φ_d, built incrementally from x^{k-1}
    let mut power = IntPoly::monomial(0).rem_monic(&phi);
    let x = IntPoly::monomial(1);
    for _ in 1..=d {
        power = power.mul(&x).rem_monic(&phi);
        let col = (0..phi_d)
            .map(|j| power.coeff(j).to_i64().ok_or(Error::Overflow("exponent matrix")))
            .collect::<Result<Vec<_>>>()?;
        columns.push(col);
    }
    Ok(ExponentMatrix { d, phi_d, columns })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(6).to_string(), "1 - x + x^2");
    }

    #[test]
    fn prime_index_is_all_ones() {
        for l in [3u64, 5, 7, 11, 13] {
            assert_eq!(cyclotomic(l), IntPoly::from_i64(&vec![1; l as usize]));
        }
    }

    #[test]
    fn phi_105_has_a_two() {
        let p = cyclotomic(105);
        assert_eq!(p.degree(), Some(48));
        assert!(p.coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_pow_minus_one() {
        let mut memo = BTreeMap::new();
        for d in 1..=200u64 {
            let prod = divisors(d)
                .into_iter()
                .fold(IntPoly::from_i64(&[1]), |acc, e| acc.mul(&cyclotomic_memo(e, &mut memo)));
            assert_eq!(prod, IntPoly::x_pow_minus_one(d as usize), "d = {d}");
            assert!(cyclotomic_memo(d, &mut memo).is_monic());
        }
    }

    #[test]
    fn exponent_matrix_d3() {
        let m = exponent_matrix(3).unwrap();
        assert_eq!(m.phi_d(), 2);
        assert_eq!(m.column(1), &[0, 1]);
        assert_eq!(m.column(2), &[-1, -1]);
        assert_eq!(m.column(3), &[1, 0]);
    }

    #[test]
    fn exponent_matrix_reexpands() {
        for d in 1..=50u64 {
            let phi = cyclotomic(d);
            let m = exponent_matrix(d).unwrap();
            for k in 1..=d as usize {
                let col = IntPoly::from_i64(m.column(k));
                let diff = {
                    let mut c: Vec<BigInt> = IntPoly::monomial(k).coeffs().to_vec();
                    for (i, a) in col.coeffs().iter().enumerate() {
                        c[i] -= a;
                    }
                    IntPoly::new(c)
                };
                assert!(diff.rem_monic(&phi).is_zero(), "d = {d}, k = {k}");
            }
            // column d is x^d mod Φ_d, which is 1 because Φ_d | x^d − 1
            let last = m.column(d as usize);
            assert_eq!(last[0], 1);
            assert!(last[1..].iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn prime_degree_columns() {
        // x^{ℓ−1} ≡ −(1 + x + … + x^{ℓ−2}) mod Φ_ℓ
        let m = exponent_matrix(5).unwrap();
        assert_eq!(m.column(4), &[-1, -1, -1, -1]);
        assert_eq!(m.column(1), &[0, 1, 0, 0]);
    }
}
