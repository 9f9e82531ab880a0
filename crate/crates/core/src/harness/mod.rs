//! Test images, file formats, run configuration and the evaluation sweep.

pub mod config;
pub mod evaluate;
pub mod io;
pub mod testimage;

pub use config::{RunConfig, SpectrumConfig};
pub use evaluate::{evaluate, reconstruct_image, EvalReport, EvalRow, Method};
pub use io::{load_image, load_points, read_points_csv, read_ppm, save_image, save_points, write_points_csv, write_ppm};
pub use testimage::{testimage, TestImage};
