use std::f64::consts::TAU;

use cyclosum_core::factorize::{split_lhs, split_rhs, SplitSpec};
use cyclosum_core::gauss::{legendre, power_gauss_sum};
use cyclosum_core::geometry::{minkowski_sum, Region};
use cyclosum_core::math::cis;
use cyclosum_core::modarith::{crt, gcd, is_prime, mod_inverse, mul_order, pow_mod, totient};
use cyclosum_core::{eval_sigma, image, SupercharacterSpec, C64};
use proptest::prelude::*;

fn naive_sigma(n: u64, omega: u64, y: u64) -> C64 {
    let d = mul_order(omega, n).unwrap();
    (1..=d).map(|j| cis(TAU * ((pow_mod(omega, j, n) as u128 * y as u128 % n as u128) as f64) / n as f64)).sum()
}

fn unit(n: u64, seed: u64) -> u64 {
    (seed..seed + n).map(|w| w % n).find(|&w| gcd(w, n) == 1).unwrap()
}

proptest! {
    #[test]
    fn modarith_agrees_with_brute_force(n in 2u64..400, a in 0u64..400, e in 0u64..40) {
        let naive = (0..e).fold(1 % n, |acc, _| acc * (a % n) % n);
        prop_assert_eq!(pow_mod(a, e, n), naive);
        prop_assert_eq!(totient(n), (1..=n).filter(|&x| gcd(x, n) == 1).count() as u64);
        prop_assert_eq!(is_prime(n), (2..n).all(|d| n % d != 0));
        if gcd(a, n) == 1 {
            let inv = mod_inverse(a, n).unwrap();
            prop_assert_eq!(a % n * inv % n, 1 % n);
            let d = mul_order(a, n).unwrap();
            prop_assert_eq!(Some(d), (1..=n).find(|&j| pow_mod(a, j, n) == 1 % n));
        }
    }

    #[test]
    fn crt_solves_both_congruences(m in 1u64..300, n in 1u64..300, a in 0u64..300, b in 0u64..300) {
        prop_assume!(gcd(m, n) == 1);
        let x = crt(a % m, m, b % n, n).unwrap();
        prop_assert!(x < m * n);
        prop_assert_eq!((x % m, x % n), (a % m, b % n));
    }

    #[test]
    fn sigma_matches_direct_sum(n in 2u64..3000, seed in 0u64..3000, y in 0u64..100_000) {
        let w = unit(n, seed);
        let spec = SupercharacterSpec::new(n, w).unwrap();
        prop_assert!((eval_sigma(&spec, y) - naive_sigma(n, w, y % n)).norm() < 1e-9);
    }

    #[test]
    fn sigma_is_orbit_invariant_and_conjugate_symmetric(n in 2u64..3000, seed in 0u64..3000, y in 0u64..3000) {
        let w = unit(n, seed);
        let spec = SupercharacterSpec::new(n, w).unwrap();
        let v = eval_sigma(&spec, y % n);
        prop_assert!((eval_sigma(&spec, w * (y % n) % n) - v).norm() < 1e-9);
        prop_assert!((eval_sigma(&spec, (n - y % n) % n) - v.conj()).norm() < 1e-9);
    }

    #[test]
    fn parseval(n in 2u64..600, seed in 0u64..600) {
        let w = unit(n, seed);
        let spec = SupercharacterSpec::new(n, w).unwrap();
        let total: f64 = (0..n).map(|y| eval_sigma(&spec, y).norm_sqr()).sum();
        let expect = (n * spec.order()) as f64;
        prop_assert!((total - expect).abs() < 1e-7 * expect);
    }

    #[test]
    fn image_orbits_partition_the_residues(n0 in 1u64..200, seed in 0u64..800, b in 1u64..6) {
        let n = (n0 * b).max(2);
        let w = unit(n, seed);
        let spec = SupercharacterSpec::new(n, w).unwrap();
        let img = image(&spec, b).unwrap();
        let d = spec.order();
        let mut seen = 0u64;
        for q in &img.points {
            prop_assert!((q.value - eval_sigma(&spec, q.rep)).norm() < 1e-9);
            prop_assert_eq!(q.layer, q.rep % b);
            prop_assert!(d % q.orbit_len == 0);
            seen += q.orbit_len;
        }
        prop_assert_eq!(seen, n);
    }

    #[test]
    fn split_identity_on_coprime_pairs(m in 2u64..60, n in 2u64..60, seed in 0u64..3600, s in -500i64..500, t in -500i64..500) {
        prop_assume!(gcd(m, n) == 1);
        let w = unit(m * n, seed);
        let spec = SplitSpec::new(m, n, w).unwrap();
        let d = spec.full_spec().order() as f64;
        prop_assert!((split_lhs(&spec, s, t) - split_rhs(&spec, s, t)).norm() <= 1e-8 * d);
    }

    #[test]
    fn quadratic_gauss_sum_is_legendre_twisted(i in 0usize..77, t in 1u64..400) {
        let p = (3u64..400).filter(|&q| is_prime(q)).nth(i).unwrap();
        prop_assume!(t % p != 0);
        let g1 = power_gauss_sum(p, 2, 1).unwrap();
        let gt = power_gauss_sum(p, 2, t).unwrap();
        prop_assert!((gt - g1 * legendre(t, p) as f64).norm() < 1e-9);
        prop_assert!((g1.norm_sqr() - p as f64).abs() < 1e-8 * p as f64);
    }

    #[test]
    fn traces_of_special_unitary_diagonals_lie_in_the_hypocycloid(k in 3u64..12, angles in prop::collection::vec(0.0f64..1.0, 11)) {
        let region = Region::hypocycloid(k, 4096).unwrap();
        let head = &angles[..k as usize - 1];
        let last = -head.iter().sum::<f64>();
        let z: C64 = head.iter().chain([last].iter()).map(|&t| cis(TAU * t)).sum();
        prop_assert!(region.contains(z, 1e-6), "{z}");
        let polygon = Region::polygon(k, 4096).unwrap();
        prop_assert!(polygon.contains(z, 1e-6));
    }

    #[test]
    fn minkowski_sum_holds_every_pair(a in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..20), b in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..20)) {
        let a: Vec<C64> = a.into_iter().map(|(x, y)| C64::new(x, y)).collect();
        let b: Vec<C64> = b.into_iter().map(|(x, y)| C64::new(x, y)).collect();
        let sum = minkowski_sum(&a, &b, 1 << 20);
        prop_assert_eq!(sum.len(), a.len() * b.len());
        for x in &a {
            for y in &b {
                prop_assert!(sum.iter().any(|z| (z - (x + y)).norm() < 1e-12));
            }
        }
    }
}
