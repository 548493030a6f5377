use std::path::Path;
use std::process::{Command, Output};

use cyclosum::csv::{parse_boundary_csv, parse_image_csv};
use cyclosum::ppm::decode;
use cyclosum::svg::check_well_formed;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclosum")).args(args).output().expect("spawn cyclosum")
}

fn prefix(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn image_writes_one_row_per_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let out = prefix(dir.path(), "fig1");
    let res = run(&["image", "--n", "478125", "--omega", "3124", "--layers", "p", "--svg", "--out", &out]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    assert!(stdout(&res).contains("126567 orbits"));
    let rows = parse_image_csv(&std::fs::read_to_string(format!("{out}.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 126567);
    assert_eq!(rows[0].rep, 0);
    assert!((rows[0].value.re - 4.0).abs() < 1e-12);
    assert!(rows.iter().all(|r| r.layer < 3));
    let ppm = decode(&std::fs::read(format!("{out}.ppm")).unwrap()).unwrap();
    assert_eq!((ppm.width, ppm.height), (1200, 1200));
    check_well_formed(&std::fs::read_to_string(format!("{out}.svg")).unwrap()).unwrap();
}

#[test]
fn image_with_prime_layers_and_overlay() {
    let dir = tempfile::tempdir().unwrap();
    let out = prefix(dir.path(), "ellipse");
    let res = run(&["image", "--p", "5", "--n", "137", "--omega", "273", "--overlay", "--width", "300", "--height", "200", "--out", &out]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let ppm = decode(&std::fs::read(format!("{out}.ppm")).unwrap()).unwrap();
    assert_eq!((ppm.width, ppm.height), (300, 200));
    let rows = parse_image_csv(&std::fs::read_to_string(format!("{out}.csv")).unwrap()).unwrap();
    assert!(rows.iter().any(|r| r.layer == 4));
}

#[test]
fn non_unit_omega_is_a_usage_error() {
    let res = run(&["image", "--n", "10", "--omega", "4"]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("not a unit"));
}

#[test]
fn unknown_verify_id_is_a_usage_error() {
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_prints_tap_lines() {
    let res = run(&["verify", "gauss-quad", "--max-p", "1000"]);
    assert!(res.status.success());
    assert!(stdout(&res).starts_with("ok gauss-quad"));
    let res = run(&["verify", "polyprod-boundary", "--k", "3", "--l", "5"]);
    assert!(res.status.success(), "{}", stdout(&res));
    assert!(stdout(&res).contains("hausdorff="));
}

#[test]
fn failing_sweep_exits_one() {
    let res = run(&["verify", "dihedral", "--max-n", "20"]);
    assert_eq!(res.status.code(), Some(1));
    assert!(stdout(&res).starts_with("not ok dihedral"));
    assert!(run(&["verify", "dihedral", "--max-n", "20", "--coprime-k"]).status.success());
}

#[test]
fn boundary_hypocycloid_has_k_cusps() {
    let dir = tempfile::tempdir().unwrap();
    let out = prefix(dir.path(), "h7");
    let res = run(&["boundary", "hypocycloid", "--k", "7", "--out", &out]);
    assert!(res.status.success());
    assert!(stdout(&res).contains(" 7 cusps"));
    let pts = parse_boundary_csv(&std::fs::read_to_string(format!("{out}.csv")).unwrap()).unwrap();
    let max = pts.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!((max - 7.0).abs() < 1e-9);
    check_well_formed(&std::fs::read_to_string(format!("{out}.svg")).unwrap()).unwrap();
}

#[test]
fn boundary_minkpower_reaches_the_scaled_cusps() {
    let dir = tempfile::tempdir().unwrap();
    let out = prefix(dir.path(), "mp");
    let res = run(&["boundary", "minkpower", "--l", "3", "--b", "2", "--out", &out]);
    assert!(res.status.success());
    let pts = parse_boundary_csv(&std::fs::read_to_string(format!("{out}.csv")).unwrap()).unwrap();
    let max = pts.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!((max - 9.0).abs() < 1e-6, "{max}");
}

#[test]
fn config_file_fills_missing_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.json");
    std::fs::write(&cfg, r#"{"command": "boundary", "kind": "hypocycloid", "k": 5}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let res = run(&["--config", cfg, "boundary", "--out", &prefix(dir.path(), "a")]);
    assert!(stdout(&res).contains(" 5 cusps"), "{}", stdout(&res));
    let res = run(&["--config", cfg, "boundary", "--k", "4", "--out", &prefix(dir.path(), "b")]);
    assert!(stdout(&res).contains(" 4 cusps"));
    let res = run(&["--config", cfg, "verify", "split"]);
    assert_eq!(res.status.code(), Some(2));
}
