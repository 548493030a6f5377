use alloc::vec::Vec;

use crate::math::{e_frac, C64};
use crate::modarith::{exponent_matrix, mul_mod, mul_order, pow_mod, ExponentMatrix};
use crate::{Error, Result};

/// `g_d(z_1, …, z_φ(d)) = Σ_{k=1}^{d} Π_j z_j^{c_{j,k}}` on the torus `T^φ(d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentMapSpec {
    d: u64,
    matrix: ExponentMatrix,
}

impl LaurentMapSpec {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgs(alloc::format!("Laurent map needs d >= 2, got {d}")));
        }
        Ok(Self { d, matrix: exponent_matrix(d)? })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn matrix(&self) -> &ExponentMatrix {
        &self.matrix
    }

    /// Number of torus coordinates, `φ(d)`.
    pub fn arity(&self) -> usize {
        self.matrix.phi_d()
    }
}

fn monomial(z: &[C64], exps: &[i64]) -> C64 {
    z.iter().zip(exps).fold(C64::new(1.0, 0.0), |acc, (&zj, &c)| match c {
        0 => acc,
        c if c > 0 => acc * zj.powu(c as u32),
        c => acc * zj.conj().powu(c.unsigned_abs() as u32),
    })
}

pub fn laurent_eval(spec: &LaurentMapSpec, z: &[C64]) -> Result<C64> {
    if z.len() != spec.arity() {
        return Err(Error::InvalidArgs(alloc::format!("expected {} coordinates, got {}", spec.arity(), z.len())));
    }
    if let Some((index, zj)) = z.iter().enumerate().find(|(_, zj)| (zj.norm() - 1.0).abs() > 1e-9) {
        return Err(Error::NotOnTorus { index, modulus: zj.norm() });
    }
    Ok((1..=spec.d as usize).map(|k| monomial(z, spec.matrix.column(k))).sum())
}

/// Evaluates `g_d` at `z_j = e(ω^{j−1} y / p^a)`, which reproduces
/// `σ_ω(y)` modulo `p^a`.
pub fn laurent_witness(d: u64, p: u64, a: u32, omega: u64, y: u64) -> Result<C64> {
    if !crate::modarith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d < 2 || p % d != 1 {
        return Err(Error::HypothesisViolated(alloc::format!("need p ≡ 1 mod d, got p = {p}, d = {d}")));
    }
    let q = p.checked_pow(a).filter(|&q| q <= crate::modarith::MAX_MODULUS).ok_or(Error::Overflow("p^a"))?;
    if mul_order(omega % q, q)? != d {
        return Err(Error::HypothesisViolated(alloc::format!("{omega} does not have order {d} mod {q}")));
    }
    let spec = LaurentMapSpec::new(d)?;
    let y = y % q;
    let z: Vec<C64> = (0..spec.arity() as u64).map(|j| e_frac(mul_mod(pow_mod(omega, j, q), y, q), q)).collect();
    laurent_eval(&spec, &z)
}
