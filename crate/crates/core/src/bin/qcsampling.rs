use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qcsampling::geometry::{Rect, VoronoiDiagram};
use qcsampling::harness::io::format_sig17;
use qcsampling::harness::{self, Method, RunConfig, TestImage};
use qcsampling::reconstruct::{gouraud, psnr, sample_colors, shepard_with};
use qcsampling::render::{self, Style};
use qcsampling::samplers::generate;
use qcsampling::spectrum::{average_spectra, power_spectrum, radial_profile, spectrum_image};
use qcsampling::{QcError, Result, Strategy};

/// Quasicrystal and comparison point sets for image sampling.
#[derive(Parser)]
#[command(name = "qcsampling", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArg {
    /// Flat key=value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
}

impl ConfigArg {
    fn load(&self) -> Result<RunConfig> {
        match &self.config {
            Some(p) => RunConfig::load(p),
            None => Ok(RunConfig::default()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a sample sequence as CSV
    Generate {
        #[arg(long)]
        strategy: Strategy,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reconstruct an image from its colors at the given sample points
    Reconstruct {
        #[arg(long)]
        method: Method,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        image: PathBuf,
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a sampled image in one of the non-photorealistic styles
    Render {
        #[arg(long)]
        style: Style,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        image: PathBuf,
        /// Output width, defaults to the input width
        #[arg(long)]
        width: Option<u32>,
        /// Output height, defaults to the input height
        #[arg(long)]
        height: Option<u32>,
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fourier power spectrum of a point set
    Spectrum {
        /// Points CSV to analyse
        #[arg(long, conflicts_with = "strategy", required_unless_present = "strategy")]
        points: Option<PathBuf>,
        /// Generate the points instead of reading them
        #[arg(long, requires = "n")]
        strategy: Option<Strategy>,
        #[arg(long)]
        n: Option<usize>,
        /// First seed; realizations use consecutive seeds
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        fmax: Option<f64>,
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long)]
        realizations: Option<usize>,
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        out_image: PathBuf,
        /// Radial profile CSV
        #[arg(long)]
        out_profile: Option<PathBuf>,
    },
    /// PSNR sweep over strategies, counts, seeds and methods
    Evaluate {
        #[arg(long)]
        image: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        strategies: Vec<Strategy>,
        #[arg(long, value_delimiter = ',', required = true)]
        counts: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "shepard,gouraud")]
        methods: Vec<Method>,
        /// Label recorded in the report, defaults to the image file name
        #[arg(long)]
        image_id: Option<String>,
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a synthetic test image
    Testimage {
        /// spiral, ramp, checker or checker:K
        #[arg(long)]
        kind: TestImage,
        #[arg(long, default_value_t = 256)]
        size: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Generate { strategy, n, seed, config, out } => {
            let cfg = config.load()?;
            let seq = generate(strategy, n, seed, &cfg.quasicrystal)?;
            harness::save_points(&out, &seq.points)
        }
        Command::Reconstruct { method, points, image, config, out } => {
            let cfg = config.load()?;
            let img = harness::load_image(&image)?;
            let s = sample_colors(&img, &harness::load_points(&points)?)?;
            let rec = match method {
                Method::Shepard => shepard_with(&s, img.width, img.height, &cfg.shepard)?,
                Method::Gouraud => gouraud(&s, img.width, img.height)?,
            };
            harness::save_image(&out, &rec)?;
            println!("psnr_db={}", psnr(&img, &rec)?);
            Ok(())
        }
        Command::Render { style, points, image, width, height, config, out } => {
            let cfg = config.load()?;
            let img = harness::load_image(&image)?;
            let (w, h) = (width.unwrap_or(img.width), height.unwrap_or(img.height));
            if w == 0 || h == 0 {
                return Err(QcError::InvalidArgument(format!("output size {w}x{h} is empty")));
            }
            let s = sample_colors(&img, &harness::load_points(&points)?)?;
            let st = &cfg.style;
            let rendered = match style {
                Style::Mosaic => render::mosaic(&s, w, h, st)?,
                Style::Paint => render::paint_strokes(&s, w, h, st)?,
                Style::Voronoi => render::draw_voronoi(&VoronoiDiagram::from_sites(&s.sites, Rect::UNIT)?, &s.colors, w, h, st)?,
                Style::Points => render::draw_points(&s.sites, w, h, st)?,
            };
            harness::save_image(&out, &rendered)
        }
        Command::Spectrum { points, strategy, n, seed, size, fmax, bins, realizations, config, out_image, out_profile } => {
            let cfg = config.load()?;
            let size = size.unwrap_or(cfg.spectrum.size);
            let fmax = fmax.unwrap_or(cfg.spectrum.fmax);
            let bins = bins.unwrap_or(cfg.spectrum.bins);
            let grid = match (points, strategy) {
                (Some(p), _) => power_spectrum(&harness::load_points(&p)?, size, fmax)?,
                (None, Some(strategy)) => {
                    let n = n.ok_or_else(|| QcError::InvalidArgument("--n is required with --strategy".into()))?;
                    let reps = if strategy.is_stochastic() { realizations.unwrap_or(cfg.spectrum.realizations) } else { 1 };
                    let grids = (0..reps.max(1) as u64)
                        .map(|k| power_spectrum(&generate(strategy, n, seed + k, &cfg.quasicrystal)?.points, size, fmax))
                        .collect::<Result<Vec<_>>>()?;
                    average_spectra(&grids)?
                }
                (None, None) => unreachable!("clap requires --points or --strategy"),
            };
            harness::save_image(&out_image, &spectrum_image(&grid))?;
            if let Some(path) = out_profile {
                let mut w = create(&path)?;
                writeln!(w, "radius,power")?;
                for (r, p) in radial_profile(&grid, bins)? {
                    writeln!(w, "{},{}", format_sig17(r), format_sig17(p))?;
                }
                w.flush()?;
            }
            Ok(())
        }
        Command::Evaluate { image, strategies, counts, seeds, methods, image_id, config, out } => {
            let cfg = config.load()?;
            let img = harness::load_image(&image)?;
            let id = image_id
                .unwrap_or_else(|| image.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default());
            let report = harness::evaluate(&img, &id, &strategies, &counts, &seeds, &methods, &cfg);
            let mut w = create(&out)?;
            report.write_csv(&mut w)?;
            w.flush()?;
            let failed = report.rows.iter().filter(|r| r.outcome.is_err()).count();
            if failed > 0 {
                eprintln!("warning: {failed} of {} cells failed; see the error column", report.rows.len());
            }
            Ok(())
        }
        Command::Testimage { kind, size, out } => harness::save_image(&out, &harness::testimage(kind, size)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
