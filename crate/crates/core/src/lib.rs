//! Cut-and-project quasicrystal point sets and tools for evaluating them as
//! image sampling patterns.
//!
//! The crate is organised bottom-up:
//!
//! * [`golden_ring`] exact arithmetic in `Z[τ]` and the decagonal ring `Z[ζ]`
//! * [`cut_project`] 1D and 2D quasicrystals, progressive ordering, phase-function growth
//! * [`samplers`] the six sampling strategies behind one interface
//! * [`geometry`] Delaunay triangulation, Voronoi cells, point location, k-nearest queries
//! * [`reconstruct`] Shepard and Gouraud reconstruction, PSNR
//! * [`render`] mosaic, paint-stroke, Voronoi and point plots
//! * [`spectrum`] periodograms of point sets
//! * [`harness`] test images, file formats and the evaluation sweep

pub mod cut_project;
pub mod error;
pub mod geometry;
pub mod golden_ring;
pub mod harness;
pub mod raster;
pub mod reconstruct;
pub mod render;
pub mod samplers;
pub mod spectrum;

pub use error::{QcError, Result};
pub use geometry::Point;
pub use golden_ring::{CycloInt, GoldenInt, TAU};
pub use raster::{RasterImage, Rgb};
pub use samplers::{SampleSequence, Strategy};
