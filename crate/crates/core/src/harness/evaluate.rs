//! Reconstruction-quality sweep over strategies, sample counts and seeds.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use super::config::RunConfig;
use crate::error::{QcError, Result};
use crate::raster::RasterImage;
use crate::reconstruct::{gouraud, psnr, sample_colors, shepard_with, Psnr};
use crate::samplers::{generate, Strategy};

/// Reconstruction method.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Shepard,
    Gouraud,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Shepard, Method::Gouraud];

    pub fn id(self) -> &'static str {
        match self {
            Method::Shepard => "shepard",
            Method::Gouraud => "gouraud",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = QcError;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| QcError::InvalidArgument(format!("unknown method '{s}' (expected one of: shepard, gouraud)")))
    }
}

/// Samples `img` with `strategy` and reconstructs it at full size.
pub fn reconstruct_image(
    img: &RasterImage,
    strategy: Strategy,
    n: usize,
    seed: u64,
    method: Method,
    cfg: &RunConfig,
) -> Result<RasterImage> {
    let seq = generate(strategy, n, seed, &cfg.quasicrystal)?;
    let s = sample_colors(img, &seq.points)?;
    match method {
        Method::Shepard => shepard_with(&s, img.width, img.height, &cfg.shepard),
        Method::Gouraud => gouraud(&s, img.width, img.height),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalRow {
    pub strategy: Strategy,
    pub n: usize,
    pub seed: u64,
    pub method: Method,
    /// PSNR against the source image, or the error that stopped this cell.
    pub outcome: std::result::Result<Psnr, String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub image_id: String,
    pub config_hash: String,
    pub rows: Vec<EvalRow>,
}

/// Runs every (strategy, n, seed, method) cell concurrently.
///
/// Rows are sorted by strategy, count, seed and method regardless of
/// completion order; a failing cell becomes an error row.
pub fn evaluate(
    img: &RasterImage,
    image_id: &str,
    strategies: &[Strategy],
    counts: &[usize],
    seeds: &[u64],
    methods: &[Method],
    cfg: &RunConfig,
) -> EvalReport {
    let mut cells = Vec::new();
    for &strategy in strategies {
        for &n in counts {
            for &seed in seeds {
                for &method in methods {
                    cells.push((strategy, n, seed, method));
                }
            }
        }
    }
    let key = |s: Strategy| Strategy::ALL.iter().position(|&k| k == s).unwrap_or(usize::MAX);
    cells.sort_by_key(|&(s, n, seed, m)| (key(s), n, seed, m));
    cells.dedup();
    let rows = cells
        .into_par_iter()
        .map(|(strategy, n, seed, method)| {
            let outcome = reconstruct_image(img, strategy, n, seed, method, cfg)
                .and_then(|out| psnr(img, &out))
                .map_err(|e| e.to_string());
            EvalRow { strategy, n, seed, method, outcome }
        })
        .collect();
    EvalReport { image_id: image_id.to_string(), config_hash: cfg.hash(), rows }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl EvalReport {
    /// Two `#` metadata lines, then `strategy,n,seed,method,psnr_db,error` rows.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "# image={}", self.image_id)?;
        writeln!(w, "# config_hash={}", self.config_hash)?;
        writeln!(w, "strategy,n,seed,method,psnr_db,error")?;
        for r in &self.rows {
            let (value, err) = match &r.outcome {
                Ok(p) => (p.to_string(), String::new()),
                Err(e) => (String::new(), csv_field(e)),
            };
            writeln!(w, "{},{},{},{},{},{}", r.strategy, r.n, r.seed, r.method, value, err)?;
        }
        Ok(())
    }

    /// Mean PSNR in dB over the seeds of one (strategy, n, method), skipping error rows.
    pub fn mean_psnr(&self, strategy: Strategy, n: usize, method: Method) -> Option<f64> {
        let vals: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.strategy == strategy && r.n == n && r.method == method)
            .filter_map(|r| r.outcome.as_ref().ok().map(|p| p.db()))
            .collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::testimage::{testimage, TestImage};

    #[test]
    fn sweep_is_canonical_and_records_errors() {
        let img = testimage(TestImage::Ramp, 32).unwrap();
        let cfg = RunConfig::default();
        let report = evaluate(
            &img,
            "ramp",
            &[Strategy::Random, Strategy::Periodic],
            &[64, 2],
            &[1, 0],
            &Method::ALL,
            &cfg,
        );
        assert_eq!(report.rows.len(), 16);
        assert_eq!(report.rows[0].strategy, Strategy::Periodic);
        assert_eq!((report.rows[0].n, report.rows[0].seed, report.rows[0].method), (2, 0, Method::Shepard));
        // two samples cannot feed four-neighbour Shepard or a triangulation
        assert!(report.rows[0].outcome.is_err());
        assert!(report.rows.iter().filter(|r| r.n == 64).all(|r| r.outcome.is_ok()));
        let again = evaluate(&img, "ramp", &[Strategy::Periodic, Strategy::Random], &[2, 64], &[0, 1], &Method::ALL, &cfg);
        assert_eq!(report, again);
        let mut csv = Vec::new();
        report.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().count(), 3 + 16);
        assert!(text.lines().nth(2).unwrap() == "strategy,n,seed,method,psnr_db,error");
    }

    #[test]
    fn method_parsing() {
        assert_eq!("gouraud".parse::<Method>().unwrap(), Method::Gouraud);
        let err = "linear".parse::<Method>().unwrap_err().to_string();
        assert!(err.contains("shepard") && err.contains("gouraud"));
    }
}
