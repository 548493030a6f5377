//! SVG 1.1 output: one `<circle>` per point and one `<path>` per curve, in
//! complex-plane coordinates with the imaginary axis flipped to point up.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use cyclosum_core::geometry::BoundaryCurve;
use cyclosum_core::render::{Rgb, Viewport, WHITE};
use cyclosum_core::C64;

use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SvgDocument {
    pub width: usize,
    pub height: usize,
    pub viewport: Viewport,
    pub background: Rgb,
    /// Dot radius and stroke width, in plane units.
    pub radius: f64,
    points: Vec<(C64, Rgb)>,
    curves: Vec<(BoundaryCurve, Rgb)>,
}

/// `−y` without a negative zero.
fn flip(y: f64) -> f64 {
    -y + 0.0
}

fn hex(c: Rgb) -> String {
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

impl SvgDocument {
    /// The viewport is widened to the aspect ratio of `width × height`.
    pub fn new(width: usize, height: usize, viewport: Viewport) -> Self {
        let viewport = viewport.fit_aspect(width.max(1), height.max(1));
        let radius = viewport.width() / width.max(1) as f64;
        Self { width, height, viewport, background: WHITE, radius, points: Vec::new(), curves: Vec::new() }
    }

    pub fn point(&mut self, z: C64, c: Rgb) -> &mut Self {
        self.points.push((z, c));
        self
    }

    pub fn curve(&mut self, curve: BoundaryCurve, c: Rgb) -> &mut Self {
        self.curves.push((curve, c));
        self
    }

    pub fn render(&self) -> String {
        let v = &self.viewport;
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
            self.width,
            self.height,
            v.re_min,
            flip(v.im_max),
            v.width(),
            v.height()
        );
        let _ = writeln!(
            out,
            r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="{}"/>"#,
            v.re_min,
            flip(v.im_max),
            v.width(),
            v.height(),
            hex(self.background)
        );
        for (z, c) in &self.points {
            let _ = writeln!(out, r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="{}"/>"#, z.re, flip(z.im), self.radius, hex(*c));
        }
        for (curve, c) in &self.curves {
            let mut d = String::new();
            for (i, z) in curve.points.iter().enumerate() {
                let _ = write!(d, "{}{:.6} {:.6}", if i == 0 { "M " } else { " L " }, z.re, flip(z.im));
            }
            if curve.closed && !curve.points.is_empty() {
                d.push_str(" Z");
            }
            let _ = writeln!(
                out,
                r#"<path d="{d}" fill="none" stroke="{}" stroke-width="{:.6}"/>"#,
                hex(*c),
                self.radius
            );
        }
        out.push_str("</svg>\n");
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.render()).map_err(|e| Error::io(path, e))
    }
}

/// Checks that every element is closed in order and that the document has a
/// single root. Attribute values are not validated.
pub fn check_well_formed(text: &str) -> Result<()> {
    let bad = |reason: String| Error::format("svg", reason);
    let mut stack: Vec<&str> = Vec::new();
    let mut roots = 0;
    let mut rest = text;
    while let Some(open) = rest.find('<') {
        let after = &rest[open + 1..];
        let close = after.find('>').ok_or_else(|| bad("unterminated tag".into()))?;
        let tag = &after[..close];
        rest = &after[close + 1..];
        if tag.starts_with('?') || tag.starts_with('!') {
            continue;
        }
        if let Some(name) = tag.strip_prefix('/') {
            match stack.pop() {
                Some(top) if top == name.trim() => {}
                top => return Err(bad(format!("</{}> closes {:?}", name.trim(), top))),
            }
            continue;
        }
        let name = tag.split(|c: char| c.is_whitespace() || c == '/').next().unwrap_or("");
        if name.is_empty() {
            return Err(bad("empty tag name".into()));
        }
        if stack.is_empty() {
            roots += 1;
        }
        if !tag.ends_with('/') {
            stack.push(name);
        }
    }
    if let Some(top) = stack.last() {
        return Err(bad(format!("<{top}> is never closed")));
    }
    if roots != 1 {
        return Err(bad(format!("{roots} root elements")));
    }
    Ok(())
}
