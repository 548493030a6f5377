//! Binary PPM (`P6`, maxval 255). Rows run top to bottom, so the first row
//! holds the largest imaginary parts.

use std::fs;
use std::path::Path;

use cyclosum_core::render::Canvas;

use crate::{Error, Result};

/// A decoded PPM raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ppm {
    pub width: usize,
    pub height: usize,
    /// Row-major RGB triples.
    pub pixels: Vec<u8>,
}

impl Ppm {
    pub fn encode(&self) -> Vec<u8> {
        encode_raw(self.width, self.height, &self.pixels)
    }
}

pub fn encode_raw(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    let header = format!("P6\n{width} {height}\n255\n");
    let mut out = Vec::with_capacity(header.len() + pixels.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(pixels);
    out
}

pub fn encode(canvas: &Canvas) -> Vec<u8> {
    encode_raw(canvas.width(), canvas.height(), canvas.pixels())
}

pub fn write_ppm(canvas: &Canvas, path: &Path) -> Result<()> {
    fs::write(path, encode(canvas)).map_err(|e| Error::io(path, e))
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_space();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::format("ppm", format!("expected a number at byte {start}")))
    }
}

pub fn decode(bytes: &[u8]) -> Result<Ppm> {
    if !bytes.starts_with(b"P6") {
        return Err(Error::format("ppm", "missing P6 magic"));
    }
    let mut h = Header { bytes, pos: 2 };
    let width = h.number()?;
    let height = h.number()?;
    let maxval = h.number()?;
    if maxval != 255 {
        return Err(Error::format("ppm", format!("maxval {maxval} is not 255")));
    }
    if !bytes.get(h.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(Error::format("ppm", "no whitespace after maxval"));
    }
    let data = &bytes[h.pos + 1..];
    let want = width * height * 3;
    if data.len() != want {
        return Err(Error::format("ppm", format!("expected {want} pixel bytes, found {}", data.len())));
    }
    Ok(Ppm { width, height, pixels: data.to_vec() })
}

pub fn read_ppm(path: &Path) -> Result<Ppm> {
    decode(&fs::read(path).map_err(|e| Error::io(path, e))?)
}
