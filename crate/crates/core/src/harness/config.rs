//! Flat `key = value` run configuration.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{QcError, Result};
use crate::raster::Rgb;
use crate::reconstruct::ShepardParams;
use crate::render::StyleConfig;
use crate::samplers::{AcceptShape, QuasicrystalConfig};

/// Spectrum grid settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumConfig {
    /// Odd grid side length.
    pub size: usize,
    /// Largest frequency on each axis, in cycles per unit length.
    pub fmax: f64,
    pub bins: usize,
    /// Independent realizations averaged for stochastic strategies.
    pub realizations: usize,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig { size: 129, fmax: 64.0, bins: 32, realizations: 1 }
    }
}

/// Every tunable of a run. Unset keys keep their defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub quasicrystal: QuasicrystalConfig,
    pub style: StyleConfig,
    pub shepard: ShepardParams,
    pub spectrum: SpectrumConfig,
}

fn parse_num<T: std::str::FromStr>(v: &str) -> Option<T> {
    v.parse().ok()
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

fn parse_rgb(v: &str) -> Option<Rgb> {
    let parts: Vec<u8> = v.split(',').map(|c| c.trim().parse().ok()).collect::<Option<_>>()?;
    <[u8; 3]>::try_from(parts).ok()
}

fn rgb_str(c: Rgb) -> String {
    format!("{},{},{}", c[0], c[1], c[2])
}

impl RunConfig {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut offset = 0;
        for raw in text.split_inclusive('\n') {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| QcError::Parse { offset, message: format!("expected key = value, found '{line}'") })?;
                cfg.set(key.trim(), value.trim()).map_err(|message| QcError::Parse { offset, message })?;
            }
            offset += raw.len();
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let bad = || format!("invalid value '{value}' for '{key}'");
        let q = &mut self.quasicrystal;
        let s = &mut self.style;
        match key {
            "shape" => {
                q.shape = match value {
                    "decagon" => AcceptShape::Decagon,
                    "disk" => AcceptShape::Disk,
                    _ => return Err(bad()),
                }
            }
            "initial_radius" => q.initial_radius = parse_num(value).filter(|r: &f64| *r > 0.0).ok_or_else(bad)?,
            "boundary" => {
                q.boundary_closed = match value {
                    "closed" => true,
                    "open" => false,
                    _ => return Err(bad()),
                }
            }
            "rotation" => q.rotation = parse_num(value).filter(|r: &f64| r.is_finite()).ok_or_else(bad)?,
            "view_half_extent" => q.view_half_extent = parse_num(value).filter(|r: &f64| *r > 0.0).ok_or_else(bad)?,
            "off_origin" => q.off_origin = parse_bool(value).ok_or_else(bad)?,
            "grout_color" => s.grout_color = parse_rgb(value).ok_or_else(bad)?,
            "edge_color" => s.edge_color = parse_rgb(value).ok_or_else(bad)?,
            "background" => s.background = parse_rgb(value).ok_or_else(bad)?,
            "ramp_start" => s.ramp_start = parse_rgb(value).ok_or_else(bad)?,
            "ramp_end" => s.ramp_end = parse_rgb(value).ok_or_else(bad)?,
            "point_radius" => s.point_radius = parse_num(value).filter(|r: &f64| *r >= 0.0).ok_or_else(bad)?,
            "paint_depth" => s.paint_depth = parse_num(value).filter(|d: &u32| *d <= 8).ok_or_else(bad)?,
            "shepard_neighbors" => self.shepard.neighbors = parse_num(value).filter(|k: &usize| *k >= 1).ok_or_else(bad)?,
            "shepard_power" => self.shepard.power = parse_num(value).filter(|p: &f64| *p > 0.0).ok_or_else(bad)?,
            "spectrum_size" => {
                self.spectrum.size = parse_num(value).filter(|k: &usize| *k >= 3 && k % 2 == 1).ok_or_else(bad)?
            }
            "spectrum_fmax" => self.spectrum.fmax = parse_num(value).filter(|f: &f64| *f > 0.0).ok_or_else(bad)?,
            "spectrum_bins" => self.spectrum.bins = parse_num(value).filter(|b: &usize| *b >= 2).ok_or_else(bad)?,
            "spectrum_realizations" => {
                self.spectrum.realizations = parse_num(value).filter(|r: &usize| *r >= 1).ok_or_else(bad)?
            }
            _ => return Err(format!("unknown key '{key}'")),
        }
        Ok(())
    }

    /// Every key with its current value, sorted by key.
    pub fn canonical(&self) -> String {
        let q = &self.quasicrystal;
        let s = &self.style;
        let mut pairs = vec![
            ("background", rgb_str(s.background)),
            ("boundary", if q.boundary_closed { "closed" } else { "open" }.to_string()),
            ("edge_color", rgb_str(s.edge_color)),
            ("grout_color", rgb_str(s.grout_color)),
            ("initial_radius", format!("{:?}", q.initial_radius)),
            ("off_origin", q.off_origin.to_string()),
            ("paint_depth", s.paint_depth.to_string()),
            ("point_radius", format!("{:?}", s.point_radius)),
            ("ramp_end", rgb_str(s.ramp_end)),
            ("ramp_start", rgb_str(s.ramp_start)),
            ("rotation", format!("{:?}", q.rotation)),
            ("shape", if q.shape == AcceptShape::Decagon { "decagon" } else { "disk" }.to_string()),
            ("shepard_neighbors", self.shepard.neighbors.to_string()),
            ("shepard_power", format!("{:?}", self.shepard.power)),
            ("spectrum_bins", self.spectrum.bins.to_string()),
            ("spectrum_fmax", format!("{:?}", self.spectrum.fmax)),
            ("spectrum_realizations", self.spectrum.realizations.to_string()),
            ("spectrum_size", self.spectrum.size.to_string()),
            ("view_half_extent", format!("{:?}", q.view_half_extent)),
        ];
        pairs.sort();
        pairs.into_iter().fold(String::new(), |mut out, (k, v)| {
            let _ = writeln!(out, "{k}={v}");
            out
        })
    }

    /// SHA-256 of [`canonical`](Self::canonical), hex encoded.
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes()).iter().fold(String::new(), |mut out, b| {
            let _ = write!(out, "{b:02x}");
            out
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_canonical_round_trip() {
        let cfg = RunConfig::parse("# demo\nshape = disk\nboundary=open\npaint_depth = 2 # deeper\ngrout_color=10,20,30\n\n").unwrap();
        assert_eq!(cfg.quasicrystal.shape, AcceptShape::Disk);
        assert!(!cfg.quasicrystal.boundary_closed);
        assert_eq!(cfg.style.paint_depth, 2);
        assert_eq!(cfg.style.grout_color, [10, 20, 30]);
        assert_eq!(RunConfig::parse(&cfg.canonical()).unwrap(), cfg);
        assert_eq!(RunConfig::parse(&cfg.canonical()).unwrap().hash(), cfg.hash());
        assert_ne!(cfg.hash(), RunConfig::default().hash());
        assert_eq!(RunConfig::default().hash().len(), 64);
    }

    #[test]
    fn errors_name_offsets() {
        assert!(matches!(RunConfig::parse("shape=disk\ncolour=1"), Err(QcError::Parse { offset: 11, .. })));
        assert!(matches!(RunConfig::parse("spectrum_size=8"), Err(QcError::Parse { offset: 0, .. })));
        assert!(matches!(RunConfig::parse("\nno equals"), Err(QcError::Parse { offset: 1, .. })));
    }
}
