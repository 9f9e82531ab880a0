//! Deterministic synthetic test images.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{QcError, Result};
use crate::raster::{pixel_center, quantize, RasterImage, Rgb};

/// Number of arms-worth of luminance bands crossed from the center to an edge midpoint.
pub const SPIRAL_TURNS: f64 = 6.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestImage {
    /// Hue follows the polar angle around the center; value is modulated
    /// along an Archimedean spiral.
    Spiral,
    /// Red grows with x, green with y, blue with x + y.
    Ramp,
    /// `k × k` black and white blocks, black at the top-left.
    Checker(u32),
}

impl fmt::Display for TestImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestImage::Spiral => f.write_str("spiral"),
            TestImage::Ramp => f.write_str("ramp"),
            TestImage::Checker(k) => write!(f, "checker:{k}"),
        }
    }
}

impl FromStr for TestImage {
    type Err = QcError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || QcError::InvalidArgument(format!("unknown test image '{s}' (expected one of: spiral, ramp, checker, checker:K)"));
        match s {
            "spiral" => Ok(TestImage::Spiral),
            "ramp" => Ok(TestImage::Ramp),
            "checker" => Ok(TestImage::Checker(8)),
            _ => {
                let k = s.strip_prefix("checker:").ok_or_else(bad)?;
                match k.parse::<u32>() {
                    Ok(k) if k >= 1 => Ok(TestImage::Checker(k)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

fn hsv(h: f64, s: f64, v: f64) -> Rgb {
    let h6 = h.rem_euclid(1.0) * 6.0;
    let sector = h6.floor();
    let f = h6 - sector;
    let (p, q, t) = (v * (1.0 - s), v * (1.0 - s * f), v * (1.0 - s * (1.0 - f)));
    let (r, g, b) = match sector as u32 {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    [r, g, b].map(|c| quantize(255.0 * c))
}

/// Renders a square test image of side `size ≥ 16`.
///
/// Spiral: with `d` the offset of the pixel center from the image center,
/// `r = 2|d|` and `θ = atan2(d.y, d.x)`, the pixel is the HSV color with
/// hue `θ/2π`, saturation 1 and value `0.25 + 0.75·(0.5 + 0.5·cos(2π·SPIRAL_TURNS·r − θ))`.
pub fn testimage(kind: TestImage, size: u32) -> Result<RasterImage> {
    if size < 16 {
        return Err(QcError::InvalidArgument(format!("test image size must be at least 16, got {size}")));
    }
    let last = (size - 1) as f64;
    Ok(match kind {
        TestImage::Spiral => RasterImage::from_fn(size, size, |i, j| {
            let p = pixel_center(i, j, size, size);
            let (dx, dy) = (p.x - 0.5, p.y - 0.5);
            let r = 2.0 * dx.hypot(dy);
            let theta = dy.atan2(dx);
            let band = 0.5 + 0.5 * (2.0 * PI * SPIRAL_TURNS * r - theta).cos();
            hsv(theta / (2.0 * PI), 1.0, 0.25 + 0.75 * band)
        }),
        TestImage::Ramp => RasterImage::from_fn(size, size, |i, j| {
            let (x, y) = (i as f64 / last, j as f64 / last);
            [quantize(255.0 * x), quantize(255.0 * y), quantize(127.5 * (x + y))]
        }),
        TestImage::Checker(k) => {
            if k > size {
                return Err(QcError::InvalidArgument(format!("{k} checker blocks do not fit in {size} pixels")));
            }
            RasterImage::from_fn(size, size, |i, j| {
                let (bi, bj) = (i as u64 * k as u64 / size as u64, j as u64 * k as u64 / size as u64);
                if (bi + bj) % 2 == 0 {
                    [0; 3]
                } else {
                    [255; 3]
                }
            })
        }
    })
}
