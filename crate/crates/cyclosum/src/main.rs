use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclosum::config::{pick, JobConfig, LayerArg};
use cyclosum::cyclosum_core::factorize::{predicted_curves, CurveShape, ShapeParams};
use cyclosum::cyclosum_core::geometry::{
    cusp_count, hypocycloid_boundary, minkowski_power_boundary, polygon_boundary, product_polygon_boundary,
    BoundaryCurve, DEFAULT_BINS,
};
use cyclosum::cyclosum_core::math::cis;
use cyclosum::cyclosum_core::modarith::{factorize, gcd};
use cyclosum::cyclosum_core::render::{
    overlay_curve, plot_image, CanvasConfig, ShadingScheme, Viewport, BLACK, DEFAULT_SIZE, OVERLAY,
};
use cyclosum::cyclosum_core::{image, SupercharacterSpec};
use cyclosum::verify::{self, SweepOptions, VerifyId};
use cyclosum::{csv, ppm, svg, Error};

/// Cyclic supercharacters: images, identity sweeps and boundary curves.
#[derive(Debug, Parser)]
#[command(name = "cyclosum", version)]
struct Cli {
    /// JSON job file with the same keys as the long flags; flags win
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Plot the image of σ_ω mod n (or mod mn, pn) as CSV + PPM
    Image(ImageArgs),
    /// Run one identity sweep and print a TAP line
    Verify(VerifyArgs),
    /// Write a boundary curve as CSV + SVG
    Boundary(BoundaryArgs),
}

#[derive(Debug, Args)]
struct ImageArgs {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    omega: Option<u64>,
    /// Extra factor of the modulus, for (m, n, ω) triples
    #[arg(long, conflicts_with = "p")]
    m: Option<u64>,
    /// Prime factor of the modulus, for (p, n, ω) triples
    #[arg(long)]
    p: Option<u64>,
    /// Layer modulus, or `p` [default: p with --p, else 1]
    #[arg(long)]
    layers: Option<LayerArg>,
    /// Output prefix [default: sigma_<modulus>_<omega>]
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    /// Dot radius in pixels
    #[arg(long)]
    radius: Option<usize>,
    /// Draw the predicted curves (with --p) or H_ord(ω) when gcd(ω − 1, n) = 1
    #[arg(long)]
    overlay: bool,
    /// Also write PREFIX.svg
    #[arg(long)]
    svg: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    id: Option<VerifyId>,
    #[arg(long)]
    max_mn: Option<u64>,
    #[arg(long)]
    max_p: Option<u64>,
    #[arg(long)]
    max_n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    cases: Option<usize>,
    /// [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads [default: all cores]
    #[arg(long)]
    threads: Option<usize>,
    /// Dihedral sweep: skip units with gcd(k, n/k) > 1
    #[arg(long)]
    coprime_k: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundaryKind {
    Hypocycloid,
    Polygon,
    Minkpower,
    Polyprod,
}

#[derive(Debug, Args)]
struct BoundaryArgs {
    kind: Option<BoundaryKind>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    /// Exponent b of H_l^(⊕ l^(b−1))
    #[arg(long)]
    b: Option<u64>,
    /// Points on the curve (per summand for minkpower)
    #[arg(long)]
    samples: Option<usize>,
    /// Angular bins for minkpower
    #[arg(long)]
    bins: Option<usize>,
    /// Output prefix [default: <kind>_<params>]
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Verification,
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl From<cyclosum::cyclosum_core::Error> for Failure {
    fn from(e: cyclosum::cyclosum_core::Error) -> Self {
        Failure::Run(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn required<T>(value: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required")))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn smallest_prime_factor(n: u64) -> u64 {
    factorize(n).first().map_or(1, |&(q, _)| q)
}

/// Overlay polylines for a `(p, n, ω)` triple.
fn predicted_overlay(p: u64, n: u64, omega: u64) -> Result<Vec<BoundaryCurve>, String> {
    let params = ShapeParams::detect(p, n, omega).map_err(|e| e.to_string())?;
    let curves = predicted_curves(&params).map_err(|e| e.to_string())?;
    Ok(curves
        .iter()
        .map(|c| match &c.shape {
            CurveShape::Winding { first, second, omega, n } => {
                let samples = (64 * n).clamp(4096, 200_000) as usize;
                let points = (0..samples)
                    .map(|i| {
                        let theta = TAU * i as f64 / samples as f64;
                        first.apply(cis(theta)) + second.apply(cis(theta * *omega as f64))
                    })
                    .collect();
                BoundaryCurve::closed(points)
            }
            _ => BoundaryCurve::closed(c.sample(720)),
        })
        .collect())
}

fn cmd_image(a: ImageArgs, cfg: &JobConfig) -> Outcome {
    let n = required(pick(a.n, cfg.n), "n")?;
    let omega = required(pick(a.omega, cfg.omega), "omega")?;
    let (m, p) = (pick(a.m, cfg.m), pick(a.p, cfg.p));
    let factor = match (m, p) {
        (Some(_), Some(_)) => return Err(Failure::Usage("--m and --p are mutually exclusive".into())),
        (Some(f), None) | (None, Some(f)) => f,
        (None, None) => 1,
    };
    let modulus = n.checked_mul(factor).ok_or_else(|| Failure::Usage("modulus overflows".into()))?;
    let spec = SupercharacterSpec::new(modulus, omega)?;
    let layers = match pick(a.layers, cfg.layers).unwrap_or(if p.is_some() { LayerArg::Prime } else { LayerArg::Modulus(1) }) {
        LayerArg::Modulus(b) => b,
        LayerArg::Prime => p.unwrap_or_else(|| smallest_prime_factor(modulus)),
    };
    let img = image(&spec, layers)?;
    let canvas_cfg = CanvasConfig {
        width: pick(a.width, cfg.width).unwrap_or(DEFAULT_SIZE),
        height: pick(a.height, cfg.height).unwrap_or(DEFAULT_SIZE),
        radius: pick(a.radius, cfg.radius).unwrap_or(0),
        ..CanvasConfig::default()
    };
    let mut canvas = plot_image(&img, &canvas_cfg)?;

    let mut overlays = Vec::new();
    if a.overlay || cfg.overlay.unwrap_or(false) {
        if let Some(p) = p {
            match predicted_overlay(p, n, omega) {
                Ok(curves) => overlays = curves,
                Err(e) => eprintln!("no predicted curve: {e}"),
            }
        } else if gcd((spec.omega() + modulus - 1) % modulus, modulus) == 1 && spec.order() > 1 {
            overlays.push(hypocycloid_boundary(spec.order(), (64 * spec.order() as usize).max(4096))?);
        } else {
            eprintln!("no overlay: gcd(ω − 1, n) ≠ 1");
        }
    }
    for curve in &overlays {
        overlay_curve(&mut canvas, curve, OVERLAY);
    }

    let prefix = pick(a.out, cfg.out.clone()).unwrap_or_else(|| PathBuf::from(format!("sigma_{modulus}_{omega}")));
    let (csv_path, ppm_path) = (with_ext(&prefix, "csv"), with_ext(&prefix, "ppm"));
    csv::write_image_csv(&img, &csv_path)?;
    ppm::write_ppm(&canvas, &ppm_path)?;
    let mut written = vec![csv_path, ppm_path];
    if a.svg || cfg.svg.unwrap_or(false) {
        let shading = ShadingScheme::new(img.layer_modulus);
        let mut doc = svg::SvgDocument::new(canvas.width(), canvas.height(), *canvas.viewport());
        for q in &img.points {
            doc.point(q.value, shading.color(q.layer));
        }
        for curve in overlays {
            doc.curve(curve, OVERLAY);
        }
        let path = with_ext(&prefix, "svg");
        doc.write(&path)?;
        written.push(path);
    }
    let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
    println!(
        "σ_{omega} mod {modulus}: ord {}, {} orbits, layers mod {layers}; wrote {}",
        spec.order(),
        img.len(),
        names.join(", ")
    );
    Ok(())
}

fn cmd_verify(a: VerifyArgs, cfg: &JobConfig) -> Outcome {
    let id = match (a.id, &cfg.id) {
        (Some(id), _) => id,
        (None, Some(s)) => s.parse().map_err(Failure::Usage)?,
        (None, None) => return Err(Failure::Usage("an identity id is required".into())),
    };
    let opts = SweepOptions {
        max_mn: pick(a.max_mn, cfg.max_mn),
        max_p: pick(a.max_p, cfg.max_p),
        max_n: pick(a.max_n, cfg.max_n),
        k: pick(a.k, cfg.k),
        l: pick(a.l, cfg.l),
        samples: pick(a.samples, cfg.samples),
        cases: pick(a.cases, cfg.cases),
        seed: pick(a.seed, cfg.seed).unwrap_or(0),
        coprime_k: a.coprime_k || cfg.coprime_k.unwrap_or(false),
        threads: pick(a.threads, cfg.threads),
    };
    let report = verify::run(id, &opts)?;
    println!("{}", report.tap_line());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_boundary(a: BoundaryArgs, cfg: &JobConfig) -> Outcome {
    let kind = match (a.kind, &cfg.kind) {
        (Some(k), _) => k,
        (None, Some(s)) => BoundaryKind::from_str(s, false).map_err(Failure::Usage)?,
        (None, None) => return Err(Failure::Usage("a boundary kind is required".into())),
    };
    let k = pick(a.k, cfg.k);
    let l = pick(a.l, cfg.l);
    let samples = pick(a.samples, cfg.samples);
    let bins = pick(a.bins, cfg.bins).unwrap_or(DEFAULT_BINS);
    // sample counts for hypocycloids are rounded up to a multiple of the
    // cusp count so every cusp is a sample
    let cusp_samples = |q: u64| {
        let want = samples.unwrap_or(4096).max(16 * q as usize);
        want.div_ceil(q as usize) * q as usize
    };
    let (curve, name) = match kind {
        BoundaryKind::Hypocycloid => {
            let k = required(k, "k")?;
            (hypocycloid_boundary(k, cusp_samples(k.max(1)))?, format!("hypocycloid_{k}"))
        }
        BoundaryKind::Polygon => {
            let k = required(k, "k")?;
            (polygon_boundary(k)?, format!("polygon_{k}"))
        }
        BoundaryKind::Minkpower => {
            let l = required(l, "l")?;
            let b = required(pick(a.b, cfg.b), "b")?;
            if b == 0 {
                return Err(Failure::Usage("--b must be positive".into()));
            }
            let copies = l
                .checked_pow(b as u32 - 1)
                .filter(|&c| c <= 1 << 16)
                .ok_or_else(|| Failure::Usage(format!("l^(b−1) is too large for l = {l}, b = {b}")))?;
            (minkowski_power_boundary(l, copies, cusp_samples(l.max(1)), bins)?, format!("minkpower_{l}_{b}"))
        }
        BoundaryKind::Polyprod => {
            let k = required(k, "k")?;
            let l = required(l, "l")?;
            (product_polygon_boundary(k, l, samples.unwrap_or(DEFAULT_BINS))?, format!("polyprod_{k}_{l}"))
        }
    };
    let prefix = pick(a.out, cfg.out.clone()).unwrap_or_else(|| PathBuf::from(name));
    let (csv_path, svg_path) = (with_ext(&prefix, "csv"), with_ext(&prefix, "svg"));
    csv::write_boundary_csv(&curve, &csv_path)?;
    let viewport = Viewport::bounding(curve.points.iter().copied(), 0.05)
        .unwrap_or(Viewport { re_min: -1.0, re_max: 1.0, im_min: -1.0, im_max: 1.0 });
    let mut doc = svg::SvgDocument::new(800, 800, viewport);
    let points = curve.points.len();
    let cusps = cusp_count(&curve);
    doc.curve(curve, BLACK);
    doc.write(&svg_path)?;
    println!("{points} points, {cusps} cusps; wrote {}, {}", csv_path.display(), svg_path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(path) => match JobConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => JobConfig::default(),
    };
    let (name, outcome) = match cli.command {
        Command::Image(a) => ("image", cfg.expect_command("image").map_err(Failure::from).and_then(|_| cmd_image(a, &cfg))),
        Command::Verify(a) => {
            ("verify", cfg.expect_command("verify").map_err(Failure::from).and_then(|_| cmd_verify(a, &cfg)))
        }
        Command::Boundary(a) => {
            ("boundary", cfg.expect_command("boundary").map_err(Failure::from).and_then(|_| cmd_boundary(a, &cfg)))
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {name}: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {name}: {e}");
            ExitCode::from(2)
        }
    }
}
