//! Fourier power spectra (periodograms) of point sets.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{QcError, Result};
use crate::geometry::Point;
use crate::raster::{quantize, RasterImage};

/// Periodogram values on a `size × size` frequency grid with DC at the center.
///
/// Cell `(i, j)` holds frequency `((i − c)·step, (j − c)·step)` where
/// `c = (size − 1)/2` and `step = 2·fmax/(size − 1)`; `values` is row-major in `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumGrid {
    pub size: usize,
    pub fmax: f64,
    pub values: Vec<f64>,
}

impl SpectrumGrid {
    pub fn center(&self) -> usize {
        (self.size - 1) / 2
    }

    pub fn step(&self) -> f64 {
        2.0 * self.fmax / (self.size - 1) as f64
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.size + i]
    }

    /// Frequency of cell `(i, j)`.
    pub fn frequency(&self, i: usize, j: usize) -> Point {
        let c = self.center() as f64;
        Point::new((i as f64 - c) * self.step(), (j as f64 - c) * self.step())
    }

    pub fn dc(&self) -> f64 {
        let c = self.center();
        self.get(c, c)
    }

    /// Mean over every cell except DC.
    pub fn off_dc_mean(&self) -> f64 {
        let c = self.center();
        let sum: f64 = self.values.iter().sum::<f64>() - self.values[c * self.size + c];
        sum / (self.values.len() - 1) as f64
    }
}

fn check_grid(size: usize, fmax: f64) -> Result<()> {
    if size < 3 || size.is_multiple_of(2) {
        return Err(QcError::InvalidArgument(format!("spectrum size must be odd and at least 3, got {size}")));
    }
    if !(fmax > 0.0 && fmax.is_finite()) {
        return Err(QcError::InvalidArgument(format!("fmax must be positive, got {fmax}")));
    }
    Ok(())
}

/// `P(f) = |Σⱼ exp(−2πi f·xⱼ)|² / n` by direct summation.
///
/// Frequencies are integer multiples of the step, so `P(f)` and `P(−f)` come
/// from exactly conjugate phasors and agree bit for bit.
pub fn power_spectrum(points: &[Point], size: usize, fmax: f64) -> Result<SpectrumGrid> {
    check_grid(size, fmax)?;
    if points.is_empty() {
        return Err(QcError::InvalidArgument("spectrum of an empty point set".into()));
    }
    let c = ((size - 1) / 2) as i64;
    let step = 2.0 * fmax / (size - 1) as f64;
    let freq = |k: usize| (k as i64 - c) as f64 * step;
    let phasor = |f: f64, x: f64| {
        let (s, c) = (-2.0 * PI * f * x).sin_cos();
        (c, s)
    };
    // x-phasors for every point, shared by all rows
    let ex: Vec<(f64, f64)> = points.iter().flat_map(|p| (0..size).map(move |i| phasor(freq(i), p.x))).collect();
    let n = points.len() as f64;
    let rows: Vec<Vec<f64>> = (0..size)
        .into_par_iter()
        .map(|j| {
            let fy = freq(j);
            let mut acc = vec![(0.0f64, 0.0f64); size];
            for (k, p) in points.iter().enumerate() {
                let (yr, yi) = phasor(fy, p.y);
                for (i, a) in acc.iter_mut().enumerate() {
                    let (xr, xi) = ex[k * size + i];
                    a.0 += xr * yr - xi * yi;
                    a.1 += xr * yi + xi * yr;
                }
            }
            acc.into_iter().map(|(re, im)| (re * re + im * im) / n).collect()
        })
        .collect();
    Ok(SpectrumGrid { size, fmax, values: rows.into_iter().flatten().collect() })
}

/// Cell-wise mean of several spectra on the same grid.
pub fn average_spectra(grids: &[SpectrumGrid]) -> Result<SpectrumGrid> {
    let first = grids.first().ok_or_else(|| QcError::InvalidArgument("no spectra to average".into()))?;
    if grids.iter().any(|g| g.size != first.size || g.fmax != first.fmax) {
        return Err(QcError::InvalidArgument("spectra must share one frequency grid".into()));
    }
    let k = grids.len() as f64;
    let values = (0..first.values.len()).map(|c| grids.iter().map(|g| g.values[c]).sum::<f64>() / k).collect();
    Ok(SpectrumGrid { values, ..first.clone() })
}

/// Grayscale display: `255·ln(1+P)/ln(1+P_max)` with `P_max` taken off DC; the DC pixel is white.
///
/// Image row `j` shows the grid row `j`, so vertical frequency grows downward.
pub fn spectrum_image(g: &SpectrumGrid) -> RasterImage {
    let c = g.center();
    let peak = g
        .values
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != c * g.size + c)
        .map(|(_, &v)| v)
        .fold(0.0f64, f64::max);
    let denom = peak.ln_1p();
    let side = g.size as u32;
    RasterImage::from_fn(side, side, |i, j| {
        if i as usize == c && j as usize == c {
            return [255; 3];
        }
        let v = if denom > 0.0 { quantize(255.0 * g.get(i as usize, j as usize).ln_1p() / denom) } else { 0 };
        [v; 3]
    })
}

/// Annular means of `P` over `|f| ≤ fmax`, DC excluded.
///
/// Returns `(bin center radius, mean power)` for each non-empty bin of width `fmax/bins`.
pub fn radial_profile(g: &SpectrumGrid, bins: usize) -> Result<Vec<(f64, f64)>> {
    if bins < 2 {
        return Err(QcError::InvalidArgument(format!("radial profile needs at least 2 bins, got {bins}")));
    }
    let width = g.fmax / bins as f64;
    let mut sum = vec![0.0; bins];
    let mut count = vec![0usize; bins];
    let c = g.center();
    for j in 0..g.size {
        for i in 0..g.size {
            if i == c && j == c {
                continue;
            }
            let r = g.frequency(i, j).norm();
            if r > g.fmax * (1.0 + 1e-12) {
                continue;
            }
            let b = ((r / width) as usize).min(bins - 1);
            sum[b] += g.get(i, j);
            count[b] += 1;
        }
    }
    Ok((0..bins)
        .filter(|&b| count[b] > 0)
        .map(|b| ((b as f64 + 0.5) * width, sum[b] / count[b] as f64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::{periodic, random_uniform};

    #[test]
    fn dc_and_single_point() {
        let pts = random_uniform(300, 1).points;
        let g = power_spectrum(&pts, 17, 20.0).unwrap();
        assert_eq!(g.dc(), 300.0);
        let one = power_spectrum(&[Point::new(0.3, 0.7)], 9, 5.0).unwrap();
        assert!(one.values.iter().all(|&v| (v - 1.0).abs() < 1e-12));
        let prof = radial_profile(&one, 4).unwrap();
        assert!(prof.iter().all(|&(_, p)| (p - 1.0).abs() < 1e-12));
    }

    #[test]
    fn conjugate_symmetry_is_exact() {
        let pts = random_uniform(200, 9).points;
        let g = power_spectrum(&pts, 21, 13.0).unwrap();
        for j in 0..21 {
            for i in 0..21 {
                assert!((g.get(i, j) - g.get(20 - i, 20 - j)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn periodic_grid_matches_dirichlet_kernel() {
        // m×m cell-centered grid: the x-sum factorizes into a Dirichlet kernel
        let m = 8usize;
        let pts = periodic(m * m).points;
        let g = power_spectrum(&pts, 33, 16.0).unwrap();
        let step = g.step();
        assert_eq!(step, 1.0);
        let dirichlet = |f: f64| -> f64 {
            let (mut re, mut im) = (0.0, 0.0);
            for k in 0..m {
                let x = (k as f64 + 0.5) / m as f64;
                re += (2.0 * PI * f * x).cos();
                im -= (2.0 * PI * f * x).sin();
            }
            re * re + im * im
        };
        let c = g.center();
        for i in 0..33 {
            let f = g.frequency(i, c).x;
            let want = dirichlet(f) * dirichlet(0.0) / (m * m) as f64;
            assert!((g.get(i, c) - want).abs() < 1e-9 * want.max(1.0));
        }
        let n = (m * m) as f64;
        assert!(g.get(c + 8, c) >= 0.9 * n);
        assert!(g.get(c + 4, c) <= 0.01 * n);
    }

    #[test]
    fn image_mapping() {
        let mut g = SpectrumGrid { size: 5, fmax: 1.0, values: vec![0.0; 25] };
        g.values[12] = 7.0;
        let img = spectrum_image(&g);
        assert_eq!(img.get(2, 2), [255; 3]);
        assert_eq!(img.pixels.iter().filter(|&&p| p == [0; 3]).count(), 24);
        let flat = SpectrumGrid { values: vec![1.0; 25], ..g };
        let img = spectrum_image(&flat);
        assert!(img.pixels.iter().enumerate().all(|(k, &p)| k == 12 || p == [255; 3]));
    }

    #[test]
    fn rejects_bad_grids() {
        let p = [Point::new(0.5, 0.5)];
        assert!(power_spectrum(&p, 8, 1.0).is_err());
        assert!(power_spectrum(&p, 9, 0.0).is_err());
        assert!(power_spectrum(&[], 9, 1.0).is_err());
        let g = power_spectrum(&p, 9, 1.0).unwrap();
        assert!(radial_profile(&g, 1).is_err());
        let avg = average_spectra(&[g.clone(), g.clone()]).unwrap();
        assert_eq!(avg, g);
    }
}
