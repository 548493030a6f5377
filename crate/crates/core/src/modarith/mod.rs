//! Machine-word modular arithmetic and exact integer polynomials.
//!
//! Moduli are `u64` below `2^62`; products go through `u128`.

mod poly;

pub use poly::{cyclotomic, exponent_matrix, ExponentMatrix, IntPoly};

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest modulus accepted by the modular routines.
pub const MAX_MODULUS: u64 = 1 << 62;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    if n <= u32::MAX as u64 {
        (a % n) * (b % n) % n
    } else {
        ((a as u128 * b as u128) % n as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `[0, n)`.
#[inline]
pub fn reduce(x: i64, n: u64) -> u64 {
    (x as i128).rem_euclid(n as i128) as u64
}

/// Extended Euclid: returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b)`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn mod_inverse(a: u64, n: u64) -> Result<u64> {
    let (g, x, _) = ext_gcd(a as i128, n as i128);
    if g != 1 {
        return Err(Error::NotAUnit { value: a, modulus: n });
    }
    Ok(x.rem_euclid(n as i128) as u64)
}

/// Deterministic Miller–Rabin; the base set is exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "cannot factor zero");
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    factor_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient of zero");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

fn check_modulus(n: u64) -> Result<()> {
    if n == 0 || n >= MAX_MODULUS {
        return Err(Error::InvalidArgs(alloc::format!("modulus {n} out of range")));
    }
    Ok(())
}

/// Multiplicative order of `omega` modulo `n`.
pub fn mul_order(omega: u64, n: u64) -> Result<u64> {
    check_modulus(n)?;
    let w = omega % n;
    if gcd(w, n) != 1 {
        return Err(Error::NotAUnit { value: omega, modulus: n });
    }
    if n == 1 {
        return Ok(1);
    }
    let mut d = totient(n);
    for (q, _) in factorize(d) {
        while d % q == 0 && pow_mod(w, d / q, n) == 1 {
            d /= q;
        }
    }
    Ok(d)
}

/// Smallest primitive root modulo the odd prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !(3..MAX_MODULUS).contains(&p) || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let qs: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or(Error::NotPrime(p))
}

/// Some unit of exact order `d` modulo `n`, found by powering small units.
/// Only guaranteed to succeed when the unit group is cyclic.
pub fn unit_of_order(d: u64, n: u64) -> Option<u64> {
    if n < 2 {
        return (d == 1).then_some(0);
    }
    let phi = totient(n);
    if d == 0 || phi % d != 0 {
        return None;
    }
    (1..n)
        .filter(|&x| gcd(x, n) == 1)
        .map(|x| pow_mod(x, phi / d, n))
        .find(|&w| mul_order(w, n).ok() == Some(d))
}

/// The residue mod `m·n` that is `a` mod `m` and `b` mod `n`, for coprime moduli.
pub fn crt(a: u64, m: u64, b: u64, n: u64) -> Result<u64> {
    if gcd(m, n) != 1 {
        return Err(Error::InvalidArgs(alloc::format!("moduli {m} and {n} are not coprime")));
    }
    let mn = m.checked_mul(n).ok_or(Error::Overflow("crt"))?;
    check_modulus(mn)?;
    if mn == 1 {
        return Ok(0);
    }
    // x = a + m·k with m·k ≡ b − a (mod n)
    let minv = if n == 1 { 0 } else { mod_inverse(m % n, n)? };
    let diff = reduce(b as i64 - (a % m) as i64, n.max(1));
    let k = mul_mod(diff, minv, n.max(1));
    Ok(((a % m) as u128 + m as u128 * k as u128) as u64 % mn)
}

/// Representative of `x` mod `n` in `(-n/2, n/2]`.
fn balanced(x: i128, n: u64) -> i64 {
    let n = n as i128;
    let r = x.rem_euclid(n);
    (if 2 * r > n { r - n } else { r }) as i64
}

/// Writes `y = s·m + t·n` (mod `m·n`) with `s` reduced mod `n` and `t`
/// reduced mod `m`, both into the balanced range.
pub fn bezout_decompose(y: i64, m: u64, n: u64) -> Result<(i64, i64)> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgs("moduli must be positive".into()));
    }
    let (g, x0, y0) = ext_gcd(m as i128, n as i128);
    let y = y as i128;
    if y % g != 0 {
        return Err(Error::NotRepresentable { value: y as i64, m, n });
    }
    let q = y / g;
    Ok((balanced(x0 * q, n), balanced(y0 * q, m)))
}
