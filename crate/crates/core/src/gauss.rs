//! Gauss sums mod an odd prime `p`.
//!
//! Two families share the name: the power sums `g_k(t) = Σ_{j=1}^{p} e(t·j^k/p)`
//! for `k | p − 1`, and the character sums `G(t, χ) = Σ_{j=1}^{p−1} χ(j) e(t·j/p)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::math::{e_frac, CompensatedSum, RootTable, C64};
use crate::modarith::{gcd, is_prime, mul_mod, pow_mod, primitive_root};
use crate::{Error, Result};

/// Largest prime for which a discrete-log table is built.
pub const MAX_TABLE_PRIME: u64 = 1 << 22;

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn check_order(p: u64, k: u64) -> Result<()> {
    if k == 0 || (p - 1) % k != 0 {
        return Err(Error::InvalidOrder { order: k, p });
    }
    Ok(())
}

/// Discrete logarithms mod `p` to the base of the smallest primitive root,
/// built by one sweep over the powers of the generator.
#[derive(Debug, Clone)]
pub struct DiscreteLog {
    p: u64,
    generator: u64,
    index: Vec<u32>,
    roots: RootTable,
}

impl DiscreteLog {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        if p > MAX_TABLE_PRIME {
            return Err(Error::InvalidArgs(format!("prime {p} exceeds the table cap")));
        }
        let generator = primitive_root(p)?;
        let mut index = vec![u32::MAX; p as usize];
        let mut x = 1u64;
        for a in 0..p - 1 {
            index[x as usize] = a as u32;
            x = x * generator % p;
        }
        Ok(Self { p, generator, index, roots: RootTable::new(p - 1) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// `a` in `[0, p−1)` with `g^a ≡ x`.
    pub fn log(&self, x: u64) -> Result<u64> {
        let x = x % self.p;
        if x == 0 {
            return Err(Error::NotAUnit { value: x, modulus: self.p });
        }
        Ok(self.index[x as usize] as u64)
    }
}

/// A multiplicative character mod `p`, stored exactly as
/// `χ(g^a) = e(c·a / (p−1))` for the table's generator `g`.
#[derive(Debug, Clone, Copy)]
pub struct Character<'a> {
    table: &'a DiscreteLog,
    c: u64,
}

impl PartialEq for Character<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.table.p == other.table.p && self.c == other.c
    }
}

impl Eq for Character<'_> {}

impl<'a> Character<'a> {
    /// The character of order `k` with `χ(g) = e(1/k)`.
    pub fn new(table: &'a DiscreteLog, k: u64) -> Result<Self> {
        check_order(table.p, k)?;
        Ok(Self { table, c: (table.p - 1) / k })
    }

    pub fn trivial(table: &'a DiscreteLog) -> Self {
        Self { table, c: 0 }
    }

    /// The character of order `den / gcd(num, den)` taking the value
    /// `e(num/den)` at `x`; `log(x)` must be coprime to `p − 1`.
    pub fn with_value_at(table: &'a DiscreteLog, x: u64, num: u64, den: u64) -> Result<Self> {
        let q = table.p - 1;
        check_order(table.p, den)?;
        let a = table.log(x)?;
        if gcd(a, q) != 1 {
            return Err(Error::HypothesisViolated(format!(
                "{x} is not a primitive root mod {}, so the character is not unique",
                table.p
            )));
        }
        let inv = crate::modarith::mod_inverse(a, q)?;
        let target = (num % den) * (q / den);
        Ok(Self { table, c: mul_mod(target, inv, q) })
    }

    pub fn p(&self) -> u64 {
        self.table.p
    }

    pub fn table(&self) -> &'a DiscreteLog {
        self.table
    }

    /// Smallest `k ≥ 1` with `χ^k = 1`.
    pub fn order(&self) -> u64 {
        let q = self.table.p - 1;
        q / gcd(self.c, q)
    }

    /// `χ(x)` as the reduced fraction `num/den` with `χ(x) = e(num/den)`.
    pub fn index(&self, x: u64) -> Result<(u64, u64)> {
        let q = self.table.p - 1;
        let r = mul_mod(self.c, self.table.log(x)?, q);
        let g = gcd(r, q);
        Ok((r / g, q / g))
    }

    pub fn eval(&self, x: u64) -> Result<C64> {
        let q = self.table.p - 1;
        let a = self.table.log(x)?;
        Ok(self.table.roots.get(mul_mod(self.c, a, q)))
    }

    pub fn pow(&self, j: i64) -> Self {
        let q = self.table.p - 1;
        let j = crate::modarith::reduce(j, q);
        Self { table: self.table, c: mul_mod(self.c, j, q) }
    }

    pub fn conj(&self) -> Self {
        self.pow(-1)
    }
}

/// `g_k(t)` by direct summation over `j = 1..=p`.
pub fn power_gauss_sum(p: u64, k: u64, t: u64) -> Result<C64> {
    check_odd_prime(p)?;
    check_order(p, k)?;
    let t = t % p;
    let acc: CompensatedSum = (1..=p).map(|j| e_frac(mul_mod(t, pow_mod(j, k, p), p), p)).collect();
    Ok(acc.value())
}

/// `g_k(t)` for every `t` in `0..p`, grouping `j` by the value of `j^k`.
pub fn power_gauss_sums(p: u64, k: u64) -> Result<Vec<C64>> {
    check_odd_prime(p)?;
    check_order(p, k)?;
    let mut count = vec![0u64; p as usize];
    for j in 1..=p {
        count[pow_mod(j, k, p) as usize] += 1;
    }
    let support: Vec<(u64, f64)> = count
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(r, &c)| (r as u64, c as f64))
        .collect();
    let roots = RootTable::new(p);
    Ok((0..p)
        .map(|t| {
            let acc: CompensatedSum = support.iter().map(|&(r, c)| roots.get(mul_mod(t, r, p)) * c).collect();
            acc.value()
        })
        .collect())
}

/// `G(t, χ)` by direct summation over `j = 1..p`.
pub fn char_gauss_sum(t: u64, chi: &Character<'_>) -> Result<C64> {
    let p = chi.p();
    if t % p == 0 {
        return Err(Error::NotAUnit { value: t, modulus: p });
    }
    let acc: CompensatedSum = (1..p)
        .map(|j| chi.eval(j).expect("j is a unit") * e_frac(mul_mod(t, j, p), p))
        .collect();
    Ok(acc.value())
}

/// `χ(t)·g_2(t)` as predicted by Gauss: `√p` if `p ≡ 1 (mod 4)`, `i√p` otherwise.
pub fn quadratic_gauss_value(p: u64) -> Result<C64> {
    check_odd_prime(p)?;
    let r = crate::math::sqrt(p as f64);
    Ok(if p % 4 == 1 { C64::new(r, 0.0) } else { C64::new(0.0, r) })
}

/// Legendre symbol of `t` mod `p` by Euler's criterion; `0` when `p | t`.
pub fn legendre(t: u64, p: u64) -> i64 {
    match pow_mod(t % p, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// `max_t |Im g_k(t)|` over the units `t`, for even `k` with `p ≡ 1 (mod 2k)`.
pub fn realness_check(p: u64, k: u64) -> Result<f64> {
    check_odd_prime(p)?;
    if k == 0 || k % 2 != 0 || (p - 1) % (2 * k) != 0 {
        return Err(Error::HypothesisViolated(format!("need k even and p ≡ 1 mod 2k, got p = {p}, k = {k}")));
    }
    let sums = power_gauss_sums(p, k)?;
    Ok(sums[1..].iter().map(|z| z.im.abs()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::TAU;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Oracle: `exp` of the naive angle.
    fn naive_g(p: u64, k: u64, t: u64) -> C64 {
        (1..=p)
            .map(|j| {
                let r = (t as u128 * (j as u128).pow(k as u32) % p as u128) as f64;
                c(0.0, TAU * r / p as f64).exp()
            })
            .sum()
    }

    #[test]
    fn trivial_character_values() {
        let t = DiscreteLog::new(13).unwrap();
        let chi = Character::new(&t, 4).unwrap();
        assert!((chi.eval(1).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((chi.eval(t.generator()).unwrap() - c(0.0, TAU / 4.0).exp()).norm() < 1e-15);
        assert_eq!(chi.order(), 4);
        assert_eq!(chi.eval(13), Err(Error::NotAUnit { value: 0, modulus: 13 }));
    }

    #[test]
    fn legendre_mod_5() {
        let t = DiscreteLog::new(5).unwrap();
        let chi = Character::new(&t, 2).unwrap();
        assert!((chi.eval(4).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        for x in 1..5 {
            assert!((chi.eval(x).unwrap().re - legendre(x, 5) as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn character_indices_are_multiplicative() {
        for p in (3..=500u64).filter(|&p| is_prime(p)) {
            let t = DiscreteLog::new(p).unwrap();
            for k in crate::modarith::divisors(p - 1) {
                let chi = Character::new(&t, k).unwrap();
                for x in (1..p).step_by(((p / 17) as usize).max(1)) {
                    for y in (1..p).step_by(((p / 13) as usize).max(1)) {
                        let (a, da) = chi.index(x).unwrap();
                        let (b, db) = chi.index(y).unwrap();
                        let (ab, dab) = chi.index(x * y % p).unwrap();
                        // a/da + b/db ≡ ab/dab (mod 1), compared over the common denominator p − 1
                        let q = p - 1;
                        assert_eq!((a * (q / da) + b * (q / db)) % q, ab * (q / dab) % q);
                    }
                }
            }
        }
    }

    #[test]
    fn character_algebra() {
        let t = DiscreteLog::new(13).unwrap();
        let chi = Character::new(&t, 12).unwrap();
        assert_eq!(chi.pow(12), Character::trivial(&t));
        assert_eq!(chi.pow(3).order(), 4);
        assert_eq!(chi.conj().pow(-1), chi);
        let w = Character::with_value_at(&t, 6, 1, 4).unwrap();
        assert!((w.eval(6).unwrap() - c(0.0, 1.0)).norm() < 1e-14);
        assert_eq!(w.order(), 4);
        assert!(matches!(Character::with_value_at(&t, 4, 1, 4), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn power_sum_examples() {
        for p in [3u64, 5, 7, 11, 13] {
            for t in 1..p {
                assert!(power_gauss_sum(p, 1, t).unwrap().norm() < 1e-12);
            }
        }
        let g = power_gauss_sum(5, 2, 1).unwrap();
        assert!((g - c(5f64.sqrt(), 0.0)).norm() < 1e-12);
        assert!((g.re - 2.2360680).abs() < 1e-7);
        let g = power_gauss_sum(3, 2, 1).unwrap();
        assert!((g - c(0.0, 3f64.sqrt())).norm() < 1e-12);
        assert!((g.im - 1.7320508).abs() < 1e-7);
        assert_eq!(power_gauss_sum(7, 4, 1), Err(Error::InvalidOrder { order: 4, p: 7 }));
        assert_eq!(power_gauss_sum(9, 2, 1), Err(Error::NotPrime(9)));
    }

    #[test]
    fn grouped_sums_match_direct_sums() {
        for (p, k) in [(13u64, 4u64), (31, 5), (97, 8), (7, 6)] {
            let all = power_gauss_sums(p, k).unwrap();
            for t in 0..p {
                assert!((all[t as usize] - naive_g(p, k, t)).norm() < 1e-9);
                assert!((all[t as usize] - power_gauss_sum(p, k, t).unwrap()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn character_sum_identities_mod_13() {
        let t = DiscreteLog::new(13).unwrap();
        let rt13 = 13f64.sqrt();
        for k in [2u64, 3, 4, 6, 12] {
            let chi = Character::new(&t, k).unwrap();
            let g1 = char_gauss_sum(1, &chi).unwrap();
            assert!((g1.norm() - rt13).abs() <= 1e-9);
            for x in 1..13 {
                let lhs = char_gauss_sum(x, &chi).unwrap();
                assert!((lhs - chi.eval(x).unwrap().conj() * g1).norm() < 1e-9);
            }
        }
        // g_4(1) = Σ_{j=1}^{3} G(1, χ^j)
        let chi = Character::new(&t, 4).unwrap();
        let rhs: C64 = (1..4).map(|j| char_gauss_sum(1, &chi.pow(j)).unwrap()).sum();
        assert!((power_gauss_sum(13, 4, 1).unwrap() - rhs).norm() < 1e-9);
        assert_eq!(char_gauss_sum(26, &chi), Err(Error::NotAUnit { value: 26, modulus: 13 }));
    }

    #[test]
    fn realness_examples() {
        assert!(realness_check(17, 4).unwrap() <= 1e-9);
        assert!(realness_check(29, 2).unwrap() <= 1e-9);
        // 13 ≡ 5 (mod 8): g_4 mod 13 has imaginary parts near 6.9, and the gate refuses it
        assert!(matches!(realness_check(13, 4), Err(Error::HypothesisViolated(_))));
        assert!(power_gauss_sums(13, 4).unwrap().iter().any(|z| z.im.abs() > 1.0));
        assert!(matches!(realness_check(7, 2), Err(Error::HypothesisViolated(_))));
        assert!(matches!(realness_check(13, 3), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn quadratic_closed_form() {
        for p in [3u64, 5, 7, 11, 13, 101, 103] {
            let q = quadratic_gauss_value(p).unwrap();
            for t in 1..p {
                let lhs = power_gauss_sum(p, 2, t).unwrap() * legendre(t, p) as f64;
                assert!((lhs - q).norm() < 1e-9, "p = {p}, t = {t}");
            }
        }
    }
}
