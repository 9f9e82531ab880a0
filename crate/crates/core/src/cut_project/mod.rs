//! Cut-and-project quasicrystals in one and two dimensions.
//!
//! A ring element is kept when its star image falls inside an acceptance
//! window and its embedding falls inside a viewing window. Enumeration walks
//! an integer box derived from the inverse embedding matrix, so the output is
//! exactly the set of qualifying ring elements.

mod phase;
mod qc1d;
mod qc2d;
mod window;

pub use phase::{phase_eval, phase_eval_complex, phase_points, PhaseGrowth, PHASE_SCALE};
pub use qc1d::{qc1d, QuasiPoint1};
pub use qc2d::{progressive_order, qc2d, QuasiPoint, COEFF_LIMIT};
pub use window::{Interval, Region2D, RegionKind, MEMBERSHIP_TOL};
