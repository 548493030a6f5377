use cyclosum::csv::{boundary_csv, image_csv, parse_boundary_csv, parse_image_csv};
use cyclosum::cyclosum_core::geometry::{hypocycloid_boundary, BoundaryCurve};
use cyclosum::cyclosum_core::render::{Canvas, Viewport, BLACK, WHITE};
use cyclosum::cyclosum_core::{image, SupercharacterSpec, C64};
use cyclosum::ppm::{decode, encode, read_ppm, write_ppm, Ppm};
use cyclosum::svg::{check_well_formed, SvgDocument};

#[test]
fn one_pixel_ppm_header() {
    let view = Viewport::bounding([C64::new(-1.0, -1.0), C64::new(1.0, 1.0)], 0.0).unwrap();
    let bytes = encode(&Canvas::new(1, 1, view, WHITE).unwrap());
    assert_eq!(&bytes[..11], b"P6\n1 1\n255\n");
    assert_eq!(&bytes[11..], &[255, 255, 255]);
}

#[test]
fn ppm_file_round_trip() {
    let view = Viewport::bounding([C64::new(-2.0, -1.0), C64::new(2.0, 1.0)], 0.1).unwrap();
    let mut canvas = Canvas::new(40, 20, view, WHITE).unwrap();
    canvas.dot(C64::new(0.5, 0.25), 2, BLACK);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.ppm");
    write_ppm(&canvas, &path).unwrap();
    let back: Ppm = read_ppm(&path).unwrap();
    assert_eq!((back.width, back.height), (40, 20));
    assert_eq!(back.pixels, canvas.pixels());
    assert!(decode(&std::fs::read(&path).unwrap()[..30]).is_err());
}

#[test]
fn csv_round_trips_exactly() {
    let spec = SupercharacterSpec::new(91, 9).unwrap();
    let img = image(&spec, 7).unwrap();
    let rows = parse_image_csv(&image_csv(&img)).unwrap();
    assert_eq!(rows.len(), img.len());
    for (row, q) in rows.iter().zip(&img.points) {
        assert_eq!((row.rep, row.value, row.layer), (q.rep, q.value, q.layer));
    }
    let pts = vec![C64::new(std::f64::consts::PI, -1e-300), C64::new(0.0, 2.5), C64::new(1.0 / 3.0, 0.1)];
    assert_eq!(parse_boundary_csv(&boundary_csv(&BoundaryCurve::closed(pts.clone()))).unwrap(), pts);
    assert!(parse_image_csv("rep,re,im\n").is_err());
}

#[test]
fn svg_is_well_formed() {
    let view = Viewport::bounding([C64::new(-3.0, -3.0), C64::new(3.0, 3.0)], 0.0).unwrap();
    let mut doc = SvgDocument::new(200, 200, view);
    doc.point(C64::new(1.0, 0.0), BLACK);
    let curve = hypocycloid_boundary(3, 60).unwrap();
    doc.curve(curve, BLACK);
    let text = doc.render();
    check_well_formed(&text).unwrap();
    assert!(text.contains("<path"));
    assert!(check_well_formed("<svg><g></svg>").is_err());
}
