//! Image reconstruction from point samples, and PSNR.

use std::fmt;

use rayon::prelude::*;

use crate::error::{QcError, Result};
use crate::geometry::{delaunay, GridIndex, Point, Triangulation};
use crate::raster::{pixel_center, quantize, RasterImage, Rgb};

/// Sample sites in unit-square coordinates with one color each.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledImage {
    pub sites: Vec<Point>,
    pub colors: Vec<Rgb>,
}

impl SampledImage {
    pub fn new(sites: Vec<Point>, colors: Vec<Rgb>) -> Result<Self> {
        if sites.len() != colors.len() {
            return Err(QcError::InvalidArgument(format!("{} sites but {} colors", sites.len(), colors.len())));
        }
        Ok(SampledImage { sites, colors })
    }
}

/// Copies the color of the pixel containing each site.
///
/// Site `(x, y)` reads pixel `(⌊xW⌋, ⌊yH⌋)`, clamped to the image.
pub fn sample_colors(img: &RasterImage, sites: &[Point]) -> Result<SampledImage> {
    if img.is_empty() {
        return Err(QcError::InvalidArgument("cannot sample an empty image".into()));
    }
    let colors = sites
        .iter()
        .map(|p| {
            let px = ((p.x * img.width as f64).floor().max(0.0) as u32).min(img.width - 1);
            let py = ((p.y * img.height as f64).floor().max(0.0) as u32).min(img.height - 1);
            img.get(px, py)
        })
        .collect();
    Ok(SampledImage { sites: sites.to_vec(), colors })
}

/// Parameters of Shepard interpolation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShepardParams {
    pub neighbors: usize,
    pub power: f64,
    /// Distance below which a pixel copies the coincident site's color.
    pub epsilon: f64,
}

impl Default for ShepardParams {
    fn default() -> Self {
        ShepardParams { neighbors: 4, power: 2.0, epsilon: 1e-9 }
    }
}

fn render_rows(width: u32, height: u32, f: impl Fn(u32, u32) -> Rgb + Sync) -> RasterImage {
    let rows: Vec<Vec<Rgb>> = (0..height).into_par_iter().map(|j| (0..width).map(|i| f(i, j)).collect()).collect();
    RasterImage { width, height, pixels: rows.into_iter().flatten().collect() }
}

fn check_size(width: u32, height: u32) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(QcError::InvalidArgument(format!("output size {width}x{height} is empty")));
    }
    Ok(())
}

/// Inverse-distance weighting over the nearest sites (four by default, weights `1/d²`).
pub fn shepard(s: &SampledImage, width: u32, height: u32) -> Result<RasterImage> {
    shepard_with(s, width, height, &ShepardParams::default())
}

pub fn shepard_with(s: &SampledImage, width: u32, height: u32, params: &ShepardParams) -> Result<RasterImage> {
    check_size(width, height)?;
    if s.sites.len() < params.neighbors || params.neighbors == 0 {
        return Err(QcError::InvalidArgument(format!(
            "shepard interpolation needs at least {} sites, got {}",
            params.neighbors.max(1),
            s.sites.len()
        )));
    }
    let index = GridIndex::new(&s.sites);
    Ok(render_rows(width, height, |i, j| {
        let q = pixel_center(i, j, width, height);
        let near = index.knearest(q, params.neighbors);
        let d0 = q.dist(s.sites[near[0]]);
        if d0 < params.epsilon {
            return s.colors[near[0]];
        }
        let mut acc = [0.0f64; 3];
        let mut total = 0.0;
        for &k in &near {
            let w = q.dist(s.sites[k]).powf(-params.power);
            total += w;
            for (a, &c) in acc.iter_mut().zip(&s.colors[k]) {
                *a += w * c as f64;
            }
        }
        acc.map(|v| quantize(v / total))
    }))
}

/// Barycentric interpolation over the Delaunay triangulation of the sites.
/// Pixels outside the convex hull take the nearest site's color.
pub fn gouraud(s: &SampledImage, width: u32, height: u32) -> Result<RasterImage> {
    check_size(width, height)?;
    let tri = delaunay(&s.sites)?;
    Ok(gouraud_on(&tri, &s.colors, width, height))
}

/// Gouraud shading over an existing triangulation whose vertices carry `colors`.
pub fn gouraud_on(tri: &Triangulation, colors: &[Rgb], width: u32, height: u32) -> RasterImage {
    let index = GridIndex::new(&tri.vertices);
    let rows: Vec<Vec<Rgb>> = (0..height)
        .into_par_iter()
        .map(|j| {
            let loc = tri.locator();
            (0..width)
                .map(|i| {
                    let q = pixel_center(i, j, width, height);
                    match loc.locate(q) {
                        Some(t) => {
                            let w = tri.barycentric(t, q);
                            let v = tri.triangles[t];
                            std::array::from_fn(|c| {
                                quantize((0..3).map(|k| w[k] * colors[v[k]][c] as f64).sum())
                            })
                        }
                        None => colors[index.nearest(q)],
                    }
                })
                .collect()
        })
        .collect();
    RasterImage { width, height, pixels: rows.into_iter().flatten().collect() }
}

/// Peak signal-to-noise ratio in decibels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Psnr {
    Finite(f64),
    /// The images are identical.
    Infinite,
}

impl Psnr {
    pub fn db(self) -> f64 {
        match self {
            Psnr::Finite(v) => v,
            Psnr::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Finite(v) => write!(f, "{v:.6}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

/// `10·log₁₀(255² / MSE)` with the MSE taken over every channel value.
pub fn psnr(a: &RasterImage, b: &RasterImage) -> Result<Psnr> {
    if a.width != b.width || a.height != b.height {
        return Err(QcError::DimensionMismatch(a.width, a.height, b.width, b.height));
    }
    let sse: u64 = a
        .pixels
        .iter()
        .zip(&b.pixels)
        .flat_map(|(p, q)| (0..3).map(move |c| (p[c] as i64 - q[c] as i64).pow(2) as u64))
        .sum();
    if sse == 0 {
        return Ok(Psnr::Infinite);
    }
    let mse = sse as f64 / (a.pixels.len() as f64 * 3.0);
    Ok(Psnr::Finite(10.0 * (255.0f64 * 255.0 / mse).log10()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_convention() {
        let img = RasterImage::from_fn(256, 256, |x, y| if (x / 32 + y / 32) % 2 == 0 { [0; 3] } else { [255; 3] });
        let s = sample_colors(&img, &[Point::new(0.0, 0.0), Point::new(0.51, 0.51), Point::new(1.0, 1.0)]).unwrap();
        assert_eq!(s.colors[0], img.get(0, 0));
        // ⌊0.51·256⌋ = 130
        assert_eq!(s.colors[1], img.get(130, 130));
        assert_eq!(s.colors[2], img.get(255, 255));
    }

    #[test]
    fn shepard_corner_symmetry() {
        let sites = vec![Point::new(0., 0.), Point::new(1., 0.), Point::new(0., 1.), Point::new(1., 1.)];
        let s = SampledImage::new(sites, vec![[0; 3], [0; 3], [255; 3], [255; 3]]).unwrap();
        // a 1x1 output samples exactly the center
        let out = shepard(&s, 1, 1).unwrap();
        assert_eq!(out.pixels[0], [128, 128, 128]);
    }

    #[test]
    fn shepard_constant_and_coincident() {
        let sites: Vec<Point> = (0..20).map(|i| Point::new((i as f64 * 0.37) % 1.0, (i as f64 * 0.61) % 1.0)).collect();
        let s = SampledImage::new(sites.clone(), vec![[12, 200, 77]; 20]).unwrap();
        assert!(shepard(&s, 31, 17).unwrap().pixels.iter().all(|&p| p == [12, 200, 77]));
        let site = vec![Point::new(0.5 / 8.0, 0.5 / 8.0), Point::new(0.9, 0.9), Point::new(0.1, 0.9), Point::new(0.9, 0.1)];
        let s = SampledImage::new(site, vec![[1, 2, 3], [200; 3], [100; 3], [50; 3]]).unwrap();
        assert_eq!(shepard(&s, 8, 8).unwrap().get(0, 0), [1, 2, 3]);
        assert!(shepard(&SampledImage::new(vec![Point::new(0.5, 0.5)], vec![[0; 3]]).unwrap(), 4, 4).is_err());
    }

    #[test]
    fn gouraud_centroid_and_vertex() {
        let sites = vec![Point::new(0.1, 0.1), Point::new(0.9, 0.1), Point::new(0.5, 0.9)];
        let s = SampledImage::new(sites, vec![[255, 0, 0], [0, 255, 0], [0, 0, 255]]).unwrap();
        let tri = delaunay(&s.sites).unwrap();
        let g = Point::new(0.5, 1.1 / 3.0);
        let w = tri.barycentric(0, g);
        let c: Vec<u8> = (0..3).map(|ch| quantize((0..3).map(|k| w[k] * s.colors[tri.triangles[0][k]][ch] as f64).sum())).collect();
        assert_eq!(c, vec![85, 85, 85]);
        // sites on pixel centers of a 4x4 raster
        let s2 = SampledImage::new(
            vec![Point::new(0.125, 0.125), Point::new(0.875, 0.125), Point::new(0.5, 0.875)],
            vec![[255, 0, 0], [0, 255, 0], [0, 0, 255]],
        )
        .unwrap();
        let out = gouraud(&s2, 4, 4).unwrap();
        assert_eq!(out.get(0, 0), [255, 0, 0]);
        assert_eq!(out.get(3, 0), [0, 255, 0]);
    }

    #[test]
    fn gouraud_reproduces_affine_ramp() {
        let ramp = |p: Point| [p.x * 255.0, p.y * 255.0, 0.5 * (p.x + p.y) * 255.0];
        let sites: Vec<Point> = crate::samplers::halton(300).points;
        let colors: Vec<Rgb> = sites.iter().map(|&p| ramp(p).map(quantize)).collect();
        let s = SampledImage::new(sites, colors).unwrap();
        let tri = delaunay(&s.sites).unwrap();
        let out = gouraud(&s, 64, 64).unwrap();
        for j in 0..64 {
            for i in 0..64 {
                let q = pixel_center(i, j, 64, 64);
                if tri.locate(q).is_some() {
                    let want = ramp(q);
                    for c in 0..3 {
                        assert!((out.get(i, j)[c] as f64 - want[c]).abs() <= 1.0);
                    }
                }
            }
        }
    }

    #[test]
    fn psnr_examples() {
        let a = RasterImage::new(2, 2, [10, 20, 30]);
        assert_eq!(psnr(&a, &a).unwrap(), Psnr::Infinite);
        let black = RasterImage::new(4, 4, [0; 3]);
        let white = RasterImage::new(4, 4, [255; 3]);
        assert_eq!(psnr(&black, &white).unwrap(), Psnr::Finite(0.0));
        let mut b = a.clone();
        b.set(1, 1, [26, 20, 30]);
        let v = psnr(&a, &b).unwrap().db();
        assert!((v - 10.0 * (65025.0f64 * 12.0 / 256.0).log10()).abs() < 1e-12);
        assert!((v - 34.84).abs() < 0.005);
        assert!(matches!(psnr(&a, &black), Err(QcError::DimensionMismatch(2, 2, 4, 4))));
    }
}
