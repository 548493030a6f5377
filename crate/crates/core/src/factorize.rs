//! Splitting a supercharacter mod `mn` into supercharacters mod `m` and mod
//! `n`, the Gauss-sum forms it takes when `m = p` is prime, and the plane
//! curves those forms predict for the layers mod `p`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::gauss::{power_gauss_sums, Character, DiscreteLog};
use crate::math::{cis, e_frac, sqrt, C64};
use crate::modarith::{bezout_decompose, gcd, is_prime, mod_inverse, mul_mod, mul_order, pow_mod, MAX_MODULUS};
use crate::supercharacter::{eval_sigma, image, ImageSet, SupercharacterSpec};
use crate::{Error, Result};

/// A unit `ω` mod `mn` together with a factorisation `ord(ω_n) = uv` where
/// `v` is coprime to `ord(ω_m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSpec {
    m: u64,
    n: u64,
    omega: u64,
    u: u64,
    v: u64,
    omega_m: u64,
    omega_n: u64,
    ord_m: u64,
    ord_n: u64,
}

fn product_modulus(m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgs("moduli must be positive".into()));
    }
    m.checked_mul(n).filter(|&mn| mn <= MAX_MODULUS).ok_or(Error::Overflow("m·n"))
}

impl SplitSpec {
    /// The split with the largest admissible `v`.
    pub fn new(m: u64, n: u64, omega: u64) -> Result<Self> {
        let (u, v) = *Self::splits(m, n, omega)?.last().expect("v = 1 is always admissible");
        Self::with_split(m, n, omega, u, v)
    }

    pub fn with_split(m: u64, n: u64, omega: u64, u: u64, v: u64) -> Result<Self> {
        let mn = product_modulus(m, n)?;
        mul_order(omega, mn)?;
        let (omega_m, omega_n) = (omega % m, omega % n);
        let ord_m = mul_order(omega_m, m)?;
        let ord_n = mul_order(omega_n, n)?;
        if u == 0 || v == 0 || u.checked_mul(v) != Some(ord_n) {
            return Err(Error::HypothesisViolated(format!("u·v = {u}·{v} is not ord(ω_n) = {ord_n}")));
        }
        if gcd(v, ord_m) != 1 {
            return Err(Error::HypothesisViolated(format!("gcd(v, ord(ω_m)) = gcd({v}, {ord_m}) ≠ 1")));
        }
        // every j-sum runs over one period of (ω_m, ω_n), which is all of
        // ⟨ω⟩ only when ord(ω) = lcm(ord(ω_m), ord(ω_n))
        let order = mul_order(omega, mn)?;
        if order != crate::modarith::lcm(ord_m, ord_n) {
            return Err(Error::HypothesisViolated(format!(
                "ord(ω) = {order} mod {mn} exceeds lcm(ord(ω_m), ord(ω_n)) = {}",
                crate::modarith::lcm(ord_m, ord_n)
            )));
        }
        Ok(Self { m, n, omega: omega % mn, u, v, omega_m, omega_n, ord_m, ord_n })
    }

    /// Every admissible `(u, v)`, in order of decreasing `u`.
    pub fn splits(m: u64, n: u64, omega: u64) -> Result<Vec<(u64, u64)>> {
        let mn = product_modulus(m, n)?;
        mul_order(omega, mn)?;
        let ord_m = mul_order(omega % m, m)?;
        let ord_n = mul_order(omega % n, n)?;
        Ok(crate::modarith::divisors(ord_n)
            .into_iter()
            .filter(|&v| gcd(v, ord_m) == 1)
            .map(|v| (ord_n / v, v))
            .collect())
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn omega(&self) -> u64 {
        self.omega
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn omega_m(&self) -> u64 {
        self.omega_m
    }

    pub fn omega_n(&self) -> u64 {
        self.omega_n
    }

    pub fn ord_m(&self) -> u64 {
        self.ord_m
    }

    pub fn ord_n(&self) -> u64 {
        self.ord_n
    }

    /// `σ_ω` mod `mn`.
    pub fn full_spec(&self) -> SupercharacterSpec {
        SupercharacterSpec::new(self.m * self.n, self.omega).expect("validated at construction")
    }

    /// `σ_{ω_m^u}` mod `m`.
    pub fn m_spec(&self) -> SupercharacterSpec {
        SupercharacterSpec::new(self.m, pow_mod(self.omega_m, self.u, self.m)).expect("power of a unit")
    }

    /// `σ_{ω_n^u}` mod `n`.
    pub fn n_spec(&self) -> SupercharacterSpec {
        SupercharacterSpec::new(self.n, pow_mod(self.omega_n, self.u, self.n)).expect("power of a unit")
    }

    /// `sm + tn` reduced mod `mn`.
    pub fn combine(&self, s: i64, t: i64) -> u64 {
        let mn = (self.m * self.n) as i128;
        ((s as i128 * self.m as i128 + t as i128 * self.n as i128).rem_euclid(mn)) as u64
    }

    /// `(s, t)` with `sm + tn ≡ y`, when `y` is a multiple of `gcd(m, n)`.
    pub fn split_at(&self, y: i64) -> Result<(i64, i64)> {
        bezout_decompose(y, self.m, self.n)
    }
}

/// `σ_ω(sm + tn)` by direct summation.
pub fn split_lhs(spec: &SplitSpec, s: i64, t: i64) -> C64 {
    eval_sigma(&spec.full_spec(), spec.combine(s, t))
}

/// `Σ_{j=1}^{u} σ_{ω_m^u}(ω^j t)·σ_{ω_n^u}(ω^j s)`.
pub fn split_rhs(spec: &SplitSpec, s: i64, t: i64) -> C64 {
    let (sm, sn) = (spec.m_spec(), spec.n_spec());
    split_rhs_with(spec, s, t, |x| eval_sigma(&sm, x), |x| eval_sigma(&sn, x))
}

/// [`split_rhs`] with caller-supplied `σ_{ω_m^u}` (mod `m`) and
/// `σ_{ω_n^u}` (mod `n`), e.g. table lookups.
pub fn split_rhs_with(
    spec: &SplitSpec,
    s: i64,
    t: i64,
    sigma_m: impl Fn(u64) -> C64,
    sigma_n: impl Fn(u64) -> C64,
) -> C64 {
    let (m, n) = (spec.m, spec.n);
    let mut x = crate::modarith::reduce(t, m);
    let mut y = crate::modarith::reduce(s, n);
    let mut acc = C64::new(0.0, 0.0);
    for _ in 0..spec.u {
        x = mul_mod(x, spec.omega_m, m);
        y = mul_mod(y, spec.omega_n, n);
        acc += sigma_m(x) * sigma_n(y);
    }
    acc
}

/// Images of `σ_{ω_m}` and `σ_{ω_n}` for a unit whose two orders are coprime.
pub fn coprime_factor_image(m: u64, n: u64, omega: u64) -> Result<(ImageSet, ImageSet)> {
    let spec = SplitSpec::with_split(m, n, omega, 1, mul_order(omega % n, n)?)?;
    if gcd(spec.ord_m, spec.ord_n) != 1 {
        return Err(Error::HypothesisViolated(format!(
            "ord(ω_m) = {} and ord(ω_n) = {} are not coprime",
            spec.ord_m, spec.ord_n
        )));
    }
    let fm = image(&SupercharacterSpec::new(m, spec.omega_m)?, 1)?;
    let fn_ = image(&SupercharacterSpec::new(n, spec.omega_n)?, 1)?;
    Ok((fm, fn_))
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn require_unit_t(t: i64, p: u64) -> Result<u64> {
    let t = crate::modarith::reduce(t, p);
    if t == 0 {
        return Err(Error::HypothesisViolated(format!("t must be a unit mod {p}")));
    }
    Ok(t)
}

/// `(1/c)·Σ_{j=1}^{u} (g_c(ω^j t) − 1)·σ_{ω_n^u}(ω^j s)` with
/// `c = gcd(u, p − 1)`, for `m = p` prime and `ω_p` a primitive root.
pub fn fracg_rhs(spec: &SplitSpec, s: i64, t: i64) -> Result<C64> {
    let c = fracg_order(spec)?;
    let g = power_gauss_sums(spec.m, c)?;
    let sn = spec.n_spec();
    fracg_rhs_with(spec, s, t, &g, |x| eval_sigma(&sn, x))
}

/// The Gauss sum order `c = gcd(u, p − 1)` used by [`fracg_rhs`], after
/// checking its hypotheses on `spec`.
pub fn fracg_order(spec: &SplitSpec) -> Result<u64> {
    let p = spec.m;
    require_odd_prime(p)?;
    if spec.ord_m != p - 1 {
        return Err(Error::HypothesisViolated(format!("ω_p = {} is not a primitive root mod {p}", spec.omega_m)));
    }
    Ok(gcd(spec.u, p - 1))
}

/// [`fracg_rhs`] with the table `g_c(0..p)` and `σ_{ω_n^u}` supplied.
pub fn fracg_rhs_with(spec: &SplitSpec, s: i64, t: i64, g: &[C64], sigma_n: impl Fn(u64) -> C64) -> Result<C64> {
    let c = fracg_order(spec)?;
    let p = spec.m;
    let t = require_unit_t(t, p)?;
    let (mut x, mut y) = (t, crate::modarith::reduce(s, spec.n));
    let mut acc = C64::new(0.0, 0.0);
    for _ in 0..spec.u {
        x = mul_mod(x, spec.omega_m, p);
        y = mul_mod(y, spec.omega_n, spec.n);
        acc += (g[x as usize] - 1.0) * sigma_n(y);
    }
    Ok(acc / c as f64)
}

/// A real 2×2 matrix acting on `z = α + iβ` as `(aα + bβ) + i(cα + dβ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearMap2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl LinearMap2 {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn diag(a: f64, d: f64) -> Self {
        Self { a, b: 0.0, c: 0.0, d }
    }

    pub fn apply(&self, z: C64) -> C64 {
        C64::new(self.a * z.re + self.b * z.im, self.c * z.re + self.d * z.im)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { a: self.a * k, b: self.b * k, c: self.c * k, d: self.d * k }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// The map `z ↦ z̄`.
    pub const fn conjugation() -> Self {
        Self::diag(1.0, -1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeCase {
    /// `p ≡ 1 (mod 2ru)`: diagonal scalings.
    Ellipse,
    /// `4 | u`, `p ≡ 1 + ru/2 (mod ru)`: first-column maps.
    Rhombus,
    /// `u = 2`, `p ≡ 3 (mod 4)`, `ω_p` primitive.
    RealA,
    /// `u = 4`, `p ≡ 5 (mod 8)`, `ω_p` primitive.
    RealB,
}

/// A split with `m = p` an odd prime, `u` even, `v` odd, `ω_n^{uv/2} = −1`
/// and `ord(ω_p) = (p − 1)/r`, plus the Gauss sum tables its case needs.
#[derive(Debug, Clone)]
pub struct ShapeParams {
    split: SplitSpec,
    r: u64,
    case: ShapeCase,
    /// `g_{ru/2}` (or `g_2` for the real cases), indexed by `t mod p`.
    g_half: Vec<C64>,
    /// `g_{ru}` for [`ShapeCase::Ellipse`]; `G(t, χ)` with `χ(ω) = i` for
    /// [`ShapeCase::RealB`].
    g_full: Vec<C64>,
}

impl ShapeParams {
    pub fn new(p: u64, n: u64, omega: u64, case: ShapeCase) -> Result<Self> {
        require_odd_prime(p)?;
        let split = SplitSpec::new(p, n, omega)?;
        let (u, v) = (split.u, split.v);
        let r = (p - 1) / split.ord_m;
        if u % 2 != 0 {
            return Err(Error::HypothesisViolated(format!("u = {u} is not even")));
        }
        if v % 2 == 0 {
            return Err(Error::HypothesisViolated(format!("v = {v} is not odd")));
        }
        if pow_mod(split.omega_n, u * v / 2, n) != n - 1 {
            return Err(Error::HypothesisViolated(format!("ω_n^(uv/2) ≢ −1 mod {n}")));
        }
        let ru = r * u;
        let (g_half, g_full) = match case {
            ShapeCase::Ellipse => {
                if p % (2 * ru) != 1 {
                    return Err(Error::HypothesisViolated(format!("p = {p} ≢ 1 mod 2ru = {}", 2 * ru)));
                }
                (power_gauss_sums(p, ru / 2)?, power_gauss_sums(p, ru)?)
            }
            ShapeCase::Rhombus => {
                if u % 4 != 0 {
                    return Err(Error::HypothesisViolated(format!("4 ∤ u = {u}")));
                }
                if p % ru != (1 + ru / 2) % ru {
                    return Err(Error::HypothesisViolated(format!("p = {p} ≢ 1 + ru/2 mod ru = {ru}")));
                }
                (power_gauss_sums(p, ru / 2)?, Vec::new())
            }
            ShapeCase::RealA | ShapeCase::RealB => {
                if r != 1 {
                    return Err(Error::HypothesisViolated(format!("ω_p = {} is not a primitive root", split.omega_m)));
                }
                let (want_u, modulus, residue) = if case == ShapeCase::RealA { (2, 4, 3) } else { (4, 8, 5) };
                if u != want_u {
                    return Err(Error::HypothesisViolated(format!("u = {u}, need u = {want_u}")));
                }
                if p % modulus != residue {
                    return Err(Error::HypothesisViolated(format!("p = {p} ≢ {residue} mod {modulus}")));
                }
                let g2 = power_gauss_sums(p, 2)?;
                let g = if case == ShapeCase::RealB { character_gauss_table(p, split.omega_m)? } else { Vec::new() };
                (g2, g)
            }
        };
        Ok(Self { split, r, case, g_half, g_full })
    }

    /// The first case whose hypotheses hold.
    pub fn detect(p: u64, n: u64, omega: u64) -> Result<Self> {
        let mut last = None;
        for case in [ShapeCase::Ellipse, ShapeCase::Rhombus, ShapeCase::RealA, ShapeCase::RealB] {
            match Self::new(p, n, omega, case) {
                Ok(params) => return Ok(params),
                Err(e @ Error::HypothesisViolated(_)) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.expect("four cases tried"))
    }

    pub fn split(&self) -> &SplitSpec {
        &self.split
    }

    pub fn p(&self) -> u64 {
        self.split.m
    }

    pub fn n(&self) -> u64 {
        self.split.n
    }

    pub fn omega(&self) -> u64 {
        self.split.omega
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn u(&self) -> u64 {
        self.split.u
    }

    pub fn v(&self) -> u64 {
        self.split.v
    }

    pub fn case(&self) -> ShapeCase {
        self.case
    }

    /// `t = y·n⁻¹ mod p`, the layer coordinate of the residue `y`.
    pub fn t_of(&self, y: u64) -> u64 {
        let p = self.p();
        let inv = mod_inverse(self.n() % p, p).expect("p ∤ n");
        mul_mod(y % p, inv, p)
    }

    fn omega_p_pow(&self, t: u64, j: u64) -> u64 {
        mul_mod(t, pow_mod(self.split.omega_m, j, self.p()), self.p())
    }

    fn sigma_n(&self, s: i64, j: u64) -> C64 {
        let n = self.n();
        let x = mul_mod(crate::modarith::reduce(s, n), pow_mod(self.split.omega_n, j, n), n);
        eval_sigma(&self.split.n_spec(), x)
    }
}

/// `G(t, χ)` for every `t` in `0..p`, with `χ(ω) = i` and `G(0, χ) = 0`.
fn character_gauss_table(p: u64, omega: u64) -> Result<Vec<C64>> {
    let table = DiscreteLog::new(p)?;
    let chi = Character::with_value_at(&table, omega, 1, 4)?;
    let g1 = crate::gauss::char_gauss_sum(1, &chi)?;
    let mut out = alloc::vec![C64::new(0.0, 0.0); p as usize];
    for t in 1..p {
        out[t as usize] = chi.eval(t)?.conj() * g1;
    }
    Ok(out)
}

/// The matrix-sum form of `σ_ω(sp + tn)` for [`ShapeCase::Ellipse`] and
/// [`ShapeCase::Rhombus`].
pub fn shape_rhs(params: &ShapeParams, s: i64, t: i64) -> Result<C64> {
    let p = params.p();
    let t = require_unit_t(t, p)?;
    let (r, u) = (params.r, params.u());
    let ru = (r * u) as f64;
    let mut acc = C64::new(0.0, 0.0);
    for j in 1..=u / 2 {
        let x = params.omega_p_pow(t, j) as usize;
        let z = params.sigma_n(s, j);
        let map = match params.case {
            ShapeCase::Ellipse => {
                let half = params.g_half[x];
                LinearMap2::diag(half.re - 1.0, (params.g_full[x] - half).re)
            }
            ShapeCase::Rhombus => {
                let g = params.g_half[x];
                LinearMap2::new(g.re - 1.0, 0.0, g.im, 0.0)
            }
            _ => return Err(Error::InvalidArgs("real cases are evaluated by real_rhs".into())),
        };
        acc += map.apply(z);
    }
    let k = if params.case == ShapeCase::Ellipse { 2.0 } else { 4.0 };
    Ok(acc * (k / ru))
}

/// The real forms of `σ_ω(sp + tn)` for [`ShapeCase::RealA`] and
/// [`ShapeCase::RealB`].
pub fn real_rhs(params: &ShapeParams, s: i64, t: i64) -> Result<C64> {
    let p = params.p();
    let t = require_unit_t(t, p)?;
    let a = params.g_half[t as usize].re;
    match params.case {
        ShapeCase::RealA => {
            let chi = crate::gauss::legendre(t, p) as f64;
            let z = params.sigma_n(s, 0);
            Ok(LinearMap2::new(-1.0, -chi * sqrt(p as f64), 0.0, 0.0).apply(z))
        }
        ShapeCase::RealB => {
            let g = params.g_full[t as usize];
            let z = params.sigma_n(s, 0);
            let w = params.sigma_n(s, 1);
            let first = LinearMap2::new(0.5 * (a - 1.0), -g.im, 0.0, 0.0);
            let second = LinearMap2::new(0.5 * (-a - 1.0), g.re, 0.0, 0.0);
            Ok(first.apply(z) + second.apply(w))
        }
        _ => Err(Error::InvalidArgs("non-real cases are evaluated by shape_rhs".into())),
    }
}

/// A locus containing one nontrivial layer mod `p`.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveShape {
    /// `Re(z)²/a² + Im(z)²/b² = 1`.
    Ellipse { semi_re: f64, semi_im: f64 },
    /// The rhombus with vertices `±re_vertex` and `±i·im_vertex`.
    Rhombus { re_vertex: f64, im_vertex: f64 },
    /// `z ↦ first(z) + second(z^ω)` over the `n`-th roots of unity `z`.
    Winding { first: LinearMap2, second: LinearMap2, omega: u64, n: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictedCurve {
    /// A unit `t` mod `p` whose layers this curve carries.
    pub t: u64,
    pub shape: CurveShape,
}

fn rhombus_excess(x: f64, y: f64, a: f64, b: f64) -> f64 {
    let (a, b) = (a.abs(), b.abs());
    if a <= 1e-300 || b <= 1e-300 {
        // degenerate: a segment along one axis
        let (along, across, half) = if a > b { (x, y, a) } else { (y, x, b) };
        return across.abs().max(along.abs() - half).max(0.0);
    }
    let level = x.abs() / a + y.abs() / b - 1.0;
    (level * a * b / libm::hypot(a, b)).max(0.0)
}

impl PredictedCurve {
    /// How far `z` misses the curve: the level-set residual for an ellipse,
    /// the outward distance for a rhombus (0 inside), the distance to the
    /// nearest point for a winding.
    pub fn residual(&self, z: C64) -> f64 {
        match &self.shape {
            CurveShape::Ellipse { semi_re, semi_im } => {
                if semi_re.abs() > 1e-12 && semi_im.abs() > 1e-12 {
                    ((z.re / semi_re) * (z.re / semi_re) + (z.im / semi_im) * (z.im / semi_im) - 1.0).abs()
                } else {
                    rhombus_excess(z.re, z.im, *semi_re, *semi_im)
                }
            }
            CurveShape::Rhombus { re_vertex, im_vertex } => rhombus_excess(z.re, z.im, *re_vertex, *im_vertex),
            CurveShape::Winding { .. } => {
                self.sample(0).iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Points along the curve in order; `samples` is ignored for windings,
    /// which are sampled at every `n`-th root of unity.
    pub fn sample(&self, samples: usize) -> Vec<C64> {
        match &self.shape {
            CurveShape::Ellipse { semi_re, semi_im } => (0..samples.max(4))
                .map(|i| {
                    let w = cis(TAU * i as f64 / samples.max(4) as f64);
                    C64::new(semi_re.abs() * w.re, semi_im.abs() * w.im)
                })
                .collect(),
            CurveShape::Rhombus { re_vertex, im_vertex } => {
                let (a, b) = (re_vertex.abs(), im_vertex.abs());
                alloc::vec![C64::new(a, 0.0), C64::new(0.0, b), C64::new(-a, 0.0), C64::new(0.0, -b)]
            }
            CurveShape::Winding { first, second, omega, n } => (0..*n)
                .map(|s| first.apply(e_frac(s, *n)) + second.apply(e_frac(mul_mod(s, *omega % n, *n), *n)))
                .collect(),
        }
    }
}

/// One curve per coset of `⟨ω_p⟩` in the units mod `p`, for the families
/// with a closed form: ellipses (`u = 2`, `v = 1`), windings (`u = 4`,
/// `v = 1`, ellipse case) and rhombi (`u = 4`, `v = 1`).
pub fn predicted_curves(params: &ShapeParams) -> Result<Vec<PredictedCurve>> {
    let (p, n, u, v, r) = (params.p(), params.n(), params.u(), params.v(), params.r);
    if v != 1 {
        return Err(Error::UnsupportedCase(format!("v = {v}; only v = 1 has a closed-form locus")));
    }
    let unsupported = || Error::UnsupportedCase(format!("{:?} with u = {u}", params.case));
    let rf = r as f64;
    let mut curves = Vec::with_capacity(r as usize);
    for t in coset_representatives(p, params.split.omega_m) {
        let shape = match (params.case, u) {
            (ShapeCase::Ellipse, 2) => {
                let x = params.omega_p_pow(t, 1) as usize;
                let half = params.g_half[x];
                CurveShape::Ellipse { semi_re: (half.re - 1.0).abs() / rf, semi_im: (params.g_full[x] - half).re.abs() / rf }
            }
            (ShapeCase::Ellipse, 4) => {
                let diag = |j: u64| {
                    let x = params.omega_p_pow(t, j) as usize;
                    let half = params.g_half[x];
                    LinearMap2::diag(half.re - 1.0, (params.g_full[x] - half).re).scale(0.5 / rf)
                };
                // σ(ω²s) = conj σ(s) because ω_n² = −1
                CurveShape::Winding {
                    first: diag(2).compose(&LinearMap2::conjugation()),
                    second: diag(1),
                    omega: params.split.omega_n,
                    n,
                }
            }
            (ShapeCase::Rhombus, 4) => {
                let g = params.g_half[t as usize];
                CurveShape::Rhombus { re_vertex: 2.0 / rf * (g.re - 1.0), im_vertex: 2.0 / rf * g.im }
            }
            _ => return Err(unsupported()),
        };
        curves.push(PredictedCurve { t, shape });
    }
    Ok(curves)
}

/// Smallest element of each coset of `⟨g⟩` in `(Z/pZ)^×`.
fn coset_representatives(p: u64, g: u64) -> Vec<u64> {
    let mut seen = alloc::vec![false; p as usize];
    let mut reps = Vec::new();
    for t in 1..p {
        if seen[t as usize] {
            continue;
        }
        reps.push(t);
        let mut x = t;
        loop {
            seen[x as usize] = true;
            x = mul_mod(x, g, p);
            if x == t {
                break;
            }
        }
    }
    reps
}

/// The curve whose coset contains the layer of `y`; `None` on the trivial
/// layer `p | y`.
pub fn curve_for<'a>(params: &ShapeParams, curves: &'a [PredictedCurve], y: u64) -> Option<&'a PredictedCurve> {
    let t = params.t_of(y);
    if t == 0 {
        return None;
    }
    let p = params.p();
    let ord = params.split.ord_m;
    // t and c share a coset iff (t/c)^ord = 1
    curves.iter().find(|c| {
        let ratio = mul_mod(t, mod_inverse(c.t, p).expect("unit"), p);
        pow_mod(ratio, ord, p) == 1
    })
}
