//! Plain CSV for image sets (`rep,re,im,layer`) and boundary polylines
//! (`re,im`). Floats carry 17 significant digits, so they round-trip.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use cyclosum_core::geometry::BoundaryCurve;
use cyclosum_core::{ImageSet, C64};

use crate::{Error, Result};

pub const IMAGE_HEADER: &str = "rep,re,im,layer";
pub const BOUNDARY_HEADER: &str = "re,im";

/// One parsed row of an image CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageRow {
    pub rep: u64,
    pub value: C64,
    pub layer: u64,
}

pub fn image_csv(img: &ImageSet) -> String {
    let mut out = String::with_capacity(64 * (img.len() + 1));
    out.push_str(IMAGE_HEADER);
    out.push('\n');
    for p in &img.points {
        let _ = writeln!(out, "{},{:.16e},{:.16e},{}", p.rep, p.value.re, p.value.im, p.layer);
    }
    out
}

pub fn boundary_csv(curve: &BoundaryCurve) -> String {
    let mut out = String::with_capacity(48 * (curve.points.len() + 1));
    out.push_str(BOUNDARY_HEADER);
    out.push('\n');
    for z in &curve.points {
        let _ = writeln!(out, "{:.16e},{:.16e}", z.re, z.im);
    }
    out
}

pub fn write_image_csv(img: &ImageSet, path: &Path) -> Result<()> {
    fs::write(path, image_csv(img)).map_err(|e| Error::io(path, e))
}

pub fn write_boundary_csv(curve: &BoundaryCurve, path: &Path) -> Result<()> {
    fs::write(path, boundary_csv(curve)).map_err(|e| Error::io(path, e))
}

fn rows<'a>(text: &'a str, header: &str) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == header => {}
        other => return Err(Error::format("csv", format!("expected header {header:?}, got {other:?}"))),
    }
    Ok(lines.enumerate().filter(|(_, l)| !l.is_empty()).map(|(i, l)| (i + 2, l.split(',').collect())))
}

fn field<T: std::str::FromStr>(cols: &[&str], i: usize, line: usize) -> Result<T> {
    cols.get(i)
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::format("csv", format!("line {line}: bad field {}", i + 1)))
}

pub fn parse_image_csv(text: &str) -> Result<Vec<ImageRow>> {
    rows(text, IMAGE_HEADER)?
        .map(|(line, cols)| {
            if cols.len() != 4 {
                return Err(Error::format("csv", format!("line {line}: expected 4 fields")));
            }
            Ok(ImageRow {
                rep: field(&cols, 0, line)?,
                value: C64::new(field(&cols, 1, line)?, field(&cols, 2, line)?),
                layer: field(&cols, 3, line)?,
            })
        })
        .collect()
}

pub fn parse_boundary_csv(text: &str) -> Result<Vec<C64>> {
    rows(text, BOUNDARY_HEADER)?
        .map(|(line, cols)| {
            if cols.len() != 2 {
                return Err(Error::format("csv", format!("line {line}: expected 2 fields")));
            }
            Ok(C64::new(field(&cols, 0, line)?, field(&cols, 1, line)?))
        })
        .collect()
}
