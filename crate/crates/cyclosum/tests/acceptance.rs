//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p cyclosum --test acceptance`. Criteria listed in
//! `KNOWN_FAILURES` still print FAIL but do not fail the process.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cyclosum::cyclosum_core::factorize::{shape_rhs, ShapeCase, ShapeParams};
use cyclosum::cyclosum_core::{eval_sigma, image};
use cyclosum::verify::{self, SweepReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dihedral transport fails whenever `gcd(k, n/k) > 1`, first at `n = 4, ω = 3`.
const KNOWN_FAILURES: [u32; 1] = [7];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }

    fn from_reports(reports: &[SweepReport]) -> Self {
        let pass = reports.iter().all(SweepReport::passed);
        let detail = reports.iter().map(SweepReport::tap_line).collect::<Vec<_>>().join(" | ");
        Self { pass, detail }
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            out.pass = false;
            out.detail = format!("{} (took {:.1}s > {:.0}s)", out.detail, took.as_secs_f64(), limit.as_secs_f64());
        }
    }
    (out, took)
}

/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn c1() -> Outcome {
    Outcome::from_reports(&[verify::split(2000, 50, 0)])
}

fn c2() -> Outcome {
    Outcome::from_reports(&[verify::coprime(20, 3000, 0)])
}

fn c3() -> Outcome {
    Outcome::from_reports(&[
        verify::gauss_trivial(500),
        verify::gauss_quadratic(1000),
        verify::gauss_relation(200),
        verify::gauss_realness(500),
    ])
}

fn identity_residual(params: &ShapeParams, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = params.split().full_spec();
    (0..samples)
        .map(|_| {
            let s = rng.gen_range(0..params.n()) as i64;
            let t = rng.gen_range(1..params.p()) as i64;
            let lhs = eval_sigma(&full, params.split().combine(s, t));
            (lhs - shape_rhs(params, s, t).expect("unit t")).norm()
        })
        .fold(0.0, f64::max)
}

fn c4() -> Outcome {
    let ellipse = ShapeParams::new(5, 137, 273, ShapeCase::Ellipse).expect("ellipse hypotheses");
    let rhombus = ShapeParams::new(7, 1229, 3055, ShapeCase::Rhombus).expect("rhombus hypotheses");
    let tol = |params: &ShapeParams| 1e-8 * params.split().full_spec().order() as f64;

    let ell_id = identity_residual(&ellipse, 200, 1);
    let ell_img = image(&ellipse.split().full_spec(), 5).expect("image");
    let ell_res = ell_img
        .nontrivial()
        .map(|q| (q.value.re * q.value.re + q.value.im * q.value.im / 5.0 - 1.0).abs())
        .fold(0.0, f64::max);

    let rho_id = identity_residual(&rhombus, 200, 2);
    let rho_img = image(&rhombus.split().full_spec(), 7).expect("image");
    let b = 2.0 * 7f64.sqrt();
    let rho_excess = rho_img
        .nontrivial()
        .map(|q| 2.0 * (q.value.re.abs() / 2.0 + q.value.im.abs() / b - 1.0))
        .fold(f64::NEG_INFINITY, f64::max)
        .max(0.0);

    let pass = ell_id <= tol(&ellipse) && ell_res <= 1e-6 && rho_id <= tol(&rhombus) && rho_excess <= 1e-6;
    Outcome::new(
        pass,
        format!(
            "ellipse (5,137,273): identity {ell_id:.1e}, |Re²+Im²/5−1| ≤ {ell_res:.1e} on {} points; \
             rhombus (7,1229,3055): identity {rho_id:.1e}, excess {rho_excess:.1e} on {} points",
            ell_img.nontrivial().count(),
            rho_img.nontrivial().count()
        ),
    )
}

fn c5() -> Outcome {
    Outcome::from_reports(&[verify::laurent(20, 100, 100_000, 0)])
}

fn c6() -> Outcome {
    Outcome::from_reports(&[verify::hypo_containment(100, 5000, 0)])
}

fn c7() -> Outcome {
    let all = verify::dihedral(1000, false);
    let restricted = verify::dihedral(1000, true);
    let mut out = Outcome::from_reports(&[all]);
    out.detail = format!("{} | restricted to gcd(k, n/k) = 1: {}", out.detail, restricted.tap_line());
    out
}

fn c8() -> Outcome {
    let mut reports = Vec::new();
    for (k, l) in [(3, 5), (3, 7)] {
        let (out, took) = timed(Some(Duration::from_secs(30)), || {
            let report = verify::polyprod_boundary(k, l, 4000, 4096).expect("polygon orders");
            Outcome::from_reports(&[report])
        });
        reports.push(Outcome::new(out.pass, format!("{} ({:.1}s)", out.detail, took.as_secs_f64())));
    }
    let pass = reports.iter().all(|o| o.pass);
    Outcome::new(pass, reports.into_iter().map(|o| o.detail).collect::<Vec<_>>().join(" | "))
}

fn c9() -> Outcome {
    let cover: Vec<f64> = [1, 3, 9].iter().map(|&k| verify::filling_coverage(3, k, 0.15).expect("l = 3")).collect();
    let monotone = cover.windows(2).all(|w| w[1] >= w[0]);
    Outcome::new(
        monotone && cover[2] >= 0.95,
        format!("coverage k=1: {:.4}, k=3: {:.4}, k=9: {:.4}", cover[0], cover[1], cover[2]),
    )
}

fn render_once(dir: &Path) -> (Vec<u8>, Vec<u8>) {
    let prefix = dir.join("fig1");
    let status = Command::new(env!("CARGO_BIN_EXE_cyclosum"))
        .args(["image", "--n", "551905", "--omega", "20719", "--out"])
        .arg(&prefix)
        .output()
        .expect("run cyclosum");
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let read = |ext: &str| std::fs::read(prefix.with_extension(ext)).expect("output file");
    (read("ppm"), read("csv"))
}

fn c10() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let (ppm_a, csv_a) = render_once(a.path());
    let (ppm_b, csv_b) = render_once(b.path());
    Outcome::new(
        ppm_a == ppm_b && csv_a == csv_b,
        format!("ppm {} bytes, csv {} bytes", ppm_a.len(), csv_a.len()),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "splitting identity, coprime m·n ≤ 2000", Some(60), c1),
        (2, "coprime product equality", None, c2),
        (3, "Gauss sums", None, c3),
        (4, "ellipse and rhombus matrix forms", None, c4),
        (5, "Laurent witness", None, c5),
        (6, "hypocycloid containment", None, c6),
        (7, "dihedral transport, all n ≤ 1000", None, c7),
        (8, "product polygon boundary", None, c8),
        (9, "filling trend", None, c9),
        (10, "determinism", None, c10),
    ];
    let mut unexpected = 0;
    for (id, name, limit, run) in criteria {
        let (out, took) = timed(limit.map(Duration::from_secs), run);
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (out.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        if !out.pass && !known {
            unexpected += 1;
        }
        println!("{tag} {id:>2} {name} [{:.1}s]: {}", took.as_secs_f64(), out.detail);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
