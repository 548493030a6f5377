//! Cyclic supercharacters `σ_ω(y) = Σ_{j=1}^{d} e(ω^j y / n)` and their images.
//!
//! `σ_ω` is constant on the orbits of `⟨ω⟩` acting on `Z/nZ` by
//! multiplication, so an image is computed one orbit at a time: a single
//! sweep over the residues touches every residue once.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{e_frac, CompensatedSum, RootTable, C64};
use crate::modarith::{gcd, mul_mod, mul_order};
use crate::{Error, Result};

/// Root tables are only built for moduli up to this size by default.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 22;

/// A modulus `n` and a unit `ω` mod `n`, with `d = ord(ω)` cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SupercharacterSpec {
    n: u64,
    omega: u64,
    order: u64,
}

impl SupercharacterSpec {
    pub fn new(n: u64, omega: u64) -> Result<Self> {
        let order = mul_order(omega, n)?;
        Ok(Self { n, omega: omega % n, order })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn omega(&self) -> u64 {
        self.omega
    }

    /// `d = ord(ω)`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Smallest residue generating the same cyclic subgroup as `ω`. Two specs
    /// with equal keys have identical supercharacters.
    pub fn subgroup_key(&self) -> u64 {
        let mut best = self.omega;
        let mut x = 1 % self.n;
        for j in 1..=self.order {
            x = mul_mod(x, self.omega, self.n);
            if x < best && gcd(j, self.order) == 1 {
                best = x;
            }
        }
        best
    }

    /// The elements `ω^1, …, ω^d` of the subgroup.
    pub fn powers(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut x = 1 % self.n;
        for _ in 0..self.order {
            x = mul_mod(x, self.omega, self.n);
            out.push(x);
        }
        out
    }
}

/// Direct summation of the definition.
pub fn eval_sigma(spec: &SupercharacterSpec, y: u64) -> C64 {
    let n = spec.n;
    let y = y % n;
    let mut x = y;
    let mut acc = CompensatedSum::new();
    for _ in 0..spec.order {
        x = mul_mod(x, spec.omega, n);
        acc.add(e_frac(x, n));
    }
    acc.value()
}

/// One value of the image, attached to its orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImagePoint {
    /// Minimal residue of the orbit `{y·ω^j}`.
    pub rep: u64,
    pub value: C64,
    /// `rep mod b` for the layer modulus `b`.
    pub layer: u64,
    /// Number of residues in the orbit.
    pub orbit_len: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImageSet {
    pub spec: SupercharacterSpec,
    pub layer_modulus: u64,
    pub points: Vec<ImagePoint>,
}

impl ImageSet {
    pub fn values(&self) -> Vec<C64> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points whose layer is not the trivial one.
    pub fn nontrivial(&self) -> impl Iterator<Item = &ImagePoint> {
        self.points.iter().filter(|p| p.layer != 0)
    }
}

/// Evaluation strategy for `e(x/n)`.
enum Roots {
    Table(RootTable),
    Direct(u64),
}

impl Roots {
    fn new(n: u64, limit: u64) -> Self {
        if n <= limit {
            Roots::Table(RootTable::new(n))
        } else {
            Roots::Direct(n)
        }
    }

    #[inline]
    fn get(&self, x: u64) -> C64 {
        match self {
            Roots::Table(t) => t.get(x),
            Roots::Direct(n) => e_frac(x, *n),
        }
    }
}

/// Visits each orbit once, in increasing order of representative.
fn sweep_orbits(spec: &SupercharacterSpec, table_limit: u64, mut visit: impl FnMut(u64, C64, u64)) {
    let n = spec.n;
    let roots = Roots::new(n, table_limit);
    let mut seen = vec![false; n as usize];
    for y in 0..n {
        if seen[y as usize] {
            continue;
        }
        let mut acc = CompensatedSum::new();
        let mut len = 0u64;
        let mut x = y;
        loop {
            seen[x as usize] = true;
            acc.add(roots.get(x));
            len += 1;
            x = mul_mod(x, spec.omega, n);
            if x == y {
                break;
            }
        }
        let value = acc.value() * ((spec.order / len) as f64);
        visit(y, value, len);
    }
}

/// The image of `σ_ω` with layers taken mod `layer_modulus`.
pub fn image(spec: &SupercharacterSpec, layer_modulus: u64) -> Result<ImageSet> {
    image_with_limit(spec, layer_modulus, DEFAULT_TABLE_LIMIT)
}

/// As [`image`], building a root table only when `n ≤ table_limit`.
pub fn image_with_limit(spec: &SupercharacterSpec, layer_modulus: u64, table_limit: u64) -> Result<ImageSet> {
    if layer_modulus == 0 || spec.n % layer_modulus != 0 {
        return Err(Error::InvalidArgs(alloc::format!(
            "layer modulus {layer_modulus} does not divide {}",
            spec.n
        )));
    }
    let mut points = Vec::new();
    sweep_orbits(spec, table_limit, |rep, value, orbit_len| {
        points.push(ImagePoint { rep, value, layer: rep % layer_modulus, orbit_len });
    });
    Ok(ImageSet { spec: *spec, layer_modulus, points })
}

/// `σ_ω(y)` for every residue `y`, filled orbit by orbit.
#[derive(Debug, Clone)]
pub struct SigmaTable {
    spec: SupercharacterSpec,
    values: Vec<C64>,
}

impl SigmaTable {
    pub fn new(spec: &SupercharacterSpec) -> Self {
        let n = spec.n;
        let mut values = vec![C64::new(0.0, 0.0); n as usize];
        sweep_orbits(spec, DEFAULT_TABLE_LIMIT, |rep, value, _| {
            let mut x = rep;
            loop {
                values[x as usize] = value;
                x = mul_mod(x, spec.omega, n);
                if x == rep {
                    break;
                }
            }
        });
        Self { spec: *spec, values }
    }

    pub fn spec(&self) -> &SupercharacterSpec {
        &self.spec
    }

    #[inline]
    pub fn get(&self, y: u64) -> C64 {
        self.values[(y % self.spec.n) as usize]
    }
}

/// `k = gcd(ω − 1, n)` and the spec `(n/k, ω mod n/k)`.
///
/// When `gcd(k, n/k) = 1` the `k`-fold dihedral closure of the reduced image
/// is the image of `spec`. Otherwise it can fail: for `n = 4`, `ω = 3` the
/// image is `{2, 0, −2}` while the closure of `{1, −1}` is itself.
pub fn dihedral_transport(spec: &SupercharacterSpec) -> (u64, SupercharacterSpec) {
    let n = spec.n;
    let k = gcd((spec.omega + n - 1) % n, n);
    let m = n / k;
    let reduced = SupercharacterSpec::new(m, spec.omega % m)
        .expect("a unit mod n stays a unit mod every divisor of n");
    (k, reduced)
}
