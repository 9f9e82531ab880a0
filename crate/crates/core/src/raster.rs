//! 8-bit RGB raster images.

use crate::error::{QcError, Result};

pub type Rgb = [u8; 3];

/// A row-major RGB image with 8-bit channels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RasterImage {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<Rgb>,
}

impl RasterImage {
    pub fn new(width: u32, height: u32, fill: Rgb) -> Self {
        RasterImage { width, height, pixels: vec![fill; width as usize * height as usize] }
    }

    pub fn from_pixels(width: u32, height: u32, pixels: Vec<Rgb>) -> Result<Self> {
        if pixels.len() != width as usize * height as usize {
            return Err(QcError::InvalidArgument(format!(
                "{} pixels for a {}x{} image",
                pixels.len(),
                width,
                height
            )));
        }
        Ok(RasterImage { width, height, pixels })
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> Rgb) -> Self {
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        RasterImage { width, height, pixels }
    }

    pub fn get(&self, x: u32, y: u32) -> Rgb {
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    pub fn set(&mut self, x: u32, y: u32, c: Rgb) {
        let w = self.width as usize;
        self.pixels[y as usize * w + x as usize] = c;
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    /// Channel bytes in row-major RGB order.
    pub fn as_bytes(&self) -> Vec<u8> {
        self.pixels.iter().flatten().copied().collect()
    }
}

/// Rounds a real channel value half-up and clamps it to `0..=255`.
pub fn quantize(v: f64) -> u8 {
    (v + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Unit-square coordinates of the center of pixel `(i, j)`.
pub fn pixel_center(i: u32, j: u32, width: u32, height: u32) -> crate::Point {
    crate::Point::new((i as f64 + 0.5) / width as f64, (j as f64 + 0.5) / height as f64)
}
