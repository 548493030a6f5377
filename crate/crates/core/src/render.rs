//! Rasterising image sets into layer-shaded RGB canvases.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::BoundaryCurve;
use crate::math::C64;
use crate::supercharacter::ImageSet;
use crate::{Error, Result};

pub type Rgb = [u8; 3];

pub const WHITE: Rgb = [255, 255, 255];
pub const BLACK: Rgb = [0, 0, 0];
pub const OVERLAY: Rgb = [220, 30, 30];

pub const DEFAULT_SIZE: usize = 1200;

/// Axis-aligned box in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Viewport {
    /// Bounding box of `points`, padded by `pad` of its larger side on every
    /// edge.
    pub fn bounding(points: impl IntoIterator<Item = C64>, pad: f64) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut v = Self { re_min: first.re, re_max: first.re, im_min: first.im, im_max: first.im };
        for z in it {
            v.re_min = v.re_min.min(z.re);
            v.re_max = v.re_max.max(z.re);
            v.im_min = v.im_min.min(z.im);
            v.im_max = v.im_max.max(z.im);
        }
        let side = (v.re_max - v.re_min).max(v.im_max - v.im_min).max(1e-9);
        let d = side * pad;
        Some(Self { re_min: v.re_min - d, re_max: v.re_max + d, im_min: v.im_min - d, im_max: v.im_max + d })
    }

    /// Widens the shorter side about the centre so that width/height
    /// matches `w/h`.
    pub fn fit_aspect(&self, w: usize, h: usize) -> Self {
        let (dw, dh) = (self.re_max - self.re_min, self.im_max - self.im_min);
        let target = w as f64 / h as f64;
        let (cx, cy) = ((self.re_max + self.re_min) / 2.0, (self.im_max + self.im_min) / 2.0);
        let (dw, dh) = if dw / dh < target { (dh * target, dh) } else { (dw, dw / target) };
        Self { re_min: cx - dw / 2.0, re_max: cx + dw / 2.0, im_min: cy - dh / 2.0, im_max: cy + dh / 2.0 }
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }
}

/// Colour of each layer mod `b`.
///
/// Layer 0 is black. For `b ≤ 161` the others are grays
/// `round(64 + 160·j/max(1, b − 1))`, which are pairwise distinct; beyond
/// that gray levels collide, so layers get distinct 24-bit colours instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShadingScheme {
    layers: u64,
}

impl ShadingScheme {
    pub const MAX_GRAY_LAYERS: u64 = 161;

    pub fn new(layers: u64) -> Self {
        Self { layers: layers.max(1) }
    }

    pub fn layers(&self) -> u64 {
        self.layers
    }

    pub fn is_gray(&self) -> bool {
        self.layers <= Self::MAX_GRAY_LAYERS
    }

    pub fn color(&self, layer: u64) -> Rgb {
        let j = layer % self.layers;
        if j == 0 {
            return BLACK;
        }
        if self.is_gray() {
            let level = libm::round(64.0 + 160.0 * j as f64 / (self.layers - 1).max(1) as f64) as u8;
            return [level, level, level];
        }
        // a bijection of Z/(2^24 − 2) shifted past black, missing white
        const SPAN: u64 = (1 << 24) - 2;
        let c = (j % SPAN) * 0x9E_3779 % SPAN + 1;
        [(c >> 16) as u8, (c >> 8) as u8, c as u8]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanvasConfig {
    pub width: usize,
    pub height: usize,
    /// Dot radius in pixels; 0 plots single pixels.
    pub radius: usize,
    /// Defaults to the padded bounding box of the values.
    pub viewport: Option<Viewport>,
    pub padding: f64,
    pub background: Rgb,
}

impl Default for CanvasConfig {
    fn default() -> Self {
        Self { width: DEFAULT_SIZE, height: DEFAULT_SIZE, radius: 0, viewport: None, padding: 0.05, background: WHITE }
    }
}

/// An RGB raster with a complex-plane viewport; row 0 is the top (largest
/// imaginary part).
#[derive(Debug, Clone, PartialEq)]
pub struct Canvas {
    width: usize,
    height: usize,
    viewport: Viewport,
    pixels: Vec<u8>,
}

impl Canvas {
    pub fn new(width: usize, height: usize, viewport: Viewport, background: Rgb) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgs("canvas dimensions must be positive".into()));
        }
        if !(viewport.width() > 0.0 && viewport.height() > 0.0) {
            return Err(Error::InvalidArgs("viewport must have positive extent".into()));
        }
        let mut pixels = vec![0u8; 3 * width * height];
        for px in pixels.chunks_exact_mut(3) {
            px.copy_from_slice(&background);
        }
        Ok(Self { width, height, viewport: viewport.fit_aspect(width, height), pixels })
    }

    /// Wraps a raw row-major RGB buffer.
    pub fn from_pixels(width: usize, height: usize, viewport: Viewport, pixels: Vec<u8>) -> Result<Self> {
        if pixels.len() != 3 * width * height {
            return Err(Error::InvalidArgs("pixel buffer length must be 3·width·height".into()));
        }
        Ok(Self { width, height, viewport, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn viewport(&self) -> &Viewport {
        &self.viewport
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        let i = 3 * (y * self.width + x);
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    pub fn set(&mut self, x: usize, y: usize, c: Rgb) {
        let i = 3 * (y * self.width + x);
        self.pixels[i..i + 3].copy_from_slice(&c);
    }

    /// Fractional pixel coordinates of `z`.
    fn to_raster(&self, z: C64) -> (f64, f64) {
        let v = &self.viewport;
        ((z.re - v.re_min) / v.width() * self.width as f64, (v.im_max - z.im) / v.height() * self.height as f64)
    }

    /// Pixel containing `z`, if inside the viewport.
    pub fn to_pixel(&self, z: C64) -> Option<(usize, usize)> {
        let (x, y) = self.to_raster(z);
        if !(x >= 0.0 && y >= 0.0) {
            return None;
        }
        let (x, y) = (x as usize, y as usize);
        // the far edges belong to the last row and column
        let x = if x == self.width && z.re <= self.viewport.re_max { x - 1 } else { x };
        let y = if y == self.height && z.im >= self.viewport.im_min { y - 1 } else { y };
        (x < self.width && y < self.height).then_some((x, y))
    }

    pub fn pixel_center(&self, x: usize, y: usize) -> C64 {
        let v = &self.viewport;
        C64::new(
            v.re_min + (x as f64 + 0.5) * v.width() / self.width as f64,
            v.im_max - (y as f64 + 0.5) * v.height() / self.height as f64,
        )
    }

    /// Length of a pixel diagonal in plane units.
    pub fn pixel_diagonal(&self) -> f64 {
        let dx = self.viewport.width() / self.width as f64;
        let dy = self.viewport.height() / self.height as f64;
        libm::hypot(dx, dy)
    }

    pub fn dot(&mut self, z: C64, radius: usize, c: Rgb) {
        let Some((x, y)) = self.to_pixel(z) else { return };
        let r = radius as isize;
        for dy in -r..=r {
            for dx in -r..=r {
                if dx * dx + dy * dy > r * r {
                    continue;
                }
                let (px, py) = (x as isize + dx, y as isize + dy);
                if px >= 0 && py >= 0 && (px as usize) < self.width && (py as usize) < self.height {
                    self.set(px as usize, py as usize, c);
                }
            }
        }
    }

    /// 1-pixel Bresenham segment, clipped to the canvas.
    pub fn line(&mut self, a: C64, b: C64, c: Rgb) {
        let (p, q) = (self.to_raster(a), self.to_raster(b));
        let Some((p, q)) = clip(p, q, self.width as f64, self.height as f64) else { return };
        let last = |v: f64, n: usize| (libm::floor(v) as i64).clamp(0, n as i64 - 1);
        let (mut x0, mut y0) = (last(p.0, self.width), last(p.1, self.height));
        let (x1, y1) = (last(q.0, self.width), last(q.1, self.height));
        let (dx, dy) = ((x1 - x0).abs(), -(y1 - y0).abs());
        let (sx, sy) = (if x0 < x1 { 1 } else { -1 }, if y0 < y1 { 1 } else { -1 });
        let mut err = dx + dy;
        loop {
            self.set(x0 as usize, y0 as usize, c);
            if x0 == x1 && y0 == y1 {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x0 += sx;
            }
            if e2 <= dx {
                err += dx;
                y0 += sy;
            }
        }
    }
}

/// Liang–Barsky clip of the segment `p → q` to `[0, w] × [0, h]`.
fn clip(p: (f64, f64), q: (f64, f64), w: f64, h: f64) -> Option<((f64, f64), (f64, f64))> {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for (pk, qk) in [(-dx, p.0), (dx, w - p.0), (-dy, p.1), (dy, h - p.1)] {
        if pk == 0.0 {
            if qk < 0.0 {
                return None;
            }
            continue;
        }
        let r = qk / pk;
        if pk < 0.0 {
            lo = lo.max(r);
        } else {
            hi = hi.min(r);
        }
    }
    if lo > hi || !lo.is_finite() || !hi.is_finite() {
        return None;
    }
    Some(((p.0 + lo * dx, p.1 + lo * dy), (p.0 + hi * dx, p.1 + hi * dy)))
}

/// Plots every orbit value of `img` as a dot shaded by its layer; points are
/// drawn in increasing representative order.
pub fn plot_image(img: &ImageSet, config: &CanvasConfig) -> Result<Canvas> {
    if img.is_empty() {
        return Err(Error::EmptyImage);
    }
    let viewport = match config.viewport {
        Some(v) => v,
        None => Viewport::bounding(img.points.iter().map(|p| p.value), config.padding).ok_or(Error::EmptyImage)?,
    };
    let mut canvas = Canvas::new(config.width, config.height, viewport, config.background)?;
    let shading = ShadingScheme::new(img.layer_modulus);
    for p in &img.points {
        canvas.dot(p.value, config.radius, shading.color(p.layer));
    }
    Ok(canvas)
}

/// Draws `curve` as 1-pixel segments in colour `c`.
pub fn overlay_curve(canvas: &mut Canvas, curve: &BoundaryCurve, c: Rgb) {
    if curve.points.len() == 1 {
        canvas.dot(curve.points[0], 0, c);
    }
    for (a, b) in curve.edges() {
        canvas.line(a, b, c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercharacter::{image, SupercharacterSpec};

    #[test]
    fn gray_palette() {
        let s = ShadingScheme::new(5);
        assert_eq!(s.color(0), BLACK);
        assert_eq!(s.color(1), [104, 104, 104]);
        assert_eq!(s.color(4), [224, 224, 224]);
        let s = ShadingScheme::new(161);
        let levels: alloc::collections::BTreeSet<Rgb> = (0..161).map(|j| s.color(j)).collect();
        assert_eq!(levels.len(), 161);
        let s = ShadingScheme::new(2);
        assert_eq!(s.color(1), [224, 224, 224]);
    }

    #[test]
    fn categorical_palette_is_injective() {
        let s = ShadingScheme::new(100_000);
        assert!(!s.is_gray());
        let colors: alloc::collections::BTreeSet<Rgb> = (0..100_000).map(|j| s.color(j)).collect();
        assert_eq!(colors.len(), 100_000);
        assert!(!colors.contains(&WHITE));
        assert_eq!(s.color(0), BLACK);
    }

    #[test]
    fn circle_of_dots() {
        let img = image(&SupercharacterSpec::new(17, 1).unwrap(), 1).unwrap();
        let cfg = CanvasConfig { width: 200, height: 100, ..Default::default() };
        let canvas = plot_image(&img, &cfg).unwrap();
        let v = canvas.viewport();
        assert!((v.width() / v.height() - 2.0).abs() < 1e-12);
        assert_eq!(canvas.pixels().len(), 3 * 200 * 100);
        let dark = canvas.pixels().chunks_exact(3).filter(|p| p[0] == 0).count();
        assert_eq!(dark, 17);
        for p in &img.points {
            let (x, y) = canvas.to_pixel(p.value).unwrap();
            assert!((canvas.pixel_center(x, y) - p.value).norm() <= canvas.pixel_diagonal());
        }
        assert_eq!(plot_image(&img, &cfg).unwrap(), canvas);
    }

    #[test]
    fn lines_and_clipping() {
        let v = Viewport { re_min: 0.0, re_max: 10.0, im_min: 0.0, im_max: 10.0 };
        let mut c = Canvas::new(10, 10, v, WHITE).unwrap();
        let before = c.clone();
        overlay_curve(&mut c, &BoundaryCurve::default(), OVERLAY);
        assert_eq!(c, before);
        c.line(C64::new(-5.0, 0.5), C64::new(15.0, 0.5), OVERLAY);
        assert!((0..10).all(|x| c.get(x, 9) == OVERLAY));
        c.line(C64::new(-5.0, -5.0), C64::new(-1.0, -1.0), OVERLAY);
        let red = c.pixels().chunks_exact(3).filter(|p| p[1] == 30).count();
        assert_eq!(red, 10);
        c.line(C64::new(0.5, 9.5), C64::new(9.5, 0.5), BLACK);
        assert!((0..10).all(|i| c.get(i, i) == BLACK));
    }

    #[test]
    fn empty_image_is_an_error() {
        let img = ImageSet { spec: SupercharacterSpec::new(5, 1).unwrap(), layer_modulus: 1, points: Vec::new() };
        assert_eq!(plot_image(&img, &CanvasConfig::default()), Err(Error::EmptyImage));
    }
}
