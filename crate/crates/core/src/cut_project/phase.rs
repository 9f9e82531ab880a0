use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;

use super::window::Region2D;
use crate::geometry::Point;
use crate::golden_ring::{CycloInt, TAU};

/// The constant `2τ⁴` scaling the argument of the phase function.
pub const PHASE_SCALE: f64 = 2.0 * TAU * TAU * TAU * TAU;

/// `Σⱼ exp(2πi ⟨ζʲ, 2τ⁴z⟩)` for `j = 0..9`, as `(re, im)`.
pub fn phase_eval_complex(z: Point) -> (f64, f64) {
    let (mut re, mut im) = (0.0, 0.0);
    for j in 0..10 {
        let a = 2.0 * PI * j as f64 / 10.0;
        let t = 2.0 * PI * PHASE_SCALE * (a.cos() * z.x + a.sin() * z.y);
        re += t.cos();
        im += t.sin();
    }
    (re, im)
}

/// The quasicrystal phase function; real because the ten directions come in opposite pairs.
pub fn phase_eval(z: Point) -> f64 {
    phase_eval_complex(z).0
}

/// Result of growing a point set with the phase function.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PhaseGrowth {
    /// Accepted ring elements in acceptance order.
    pub coeffs: Vec<CycloInt>,
    pub points: Vec<Point>,
    /// Candidates that passed the duplicate and region tests and were evaluated.
    pub tested: usize,
    pub accepted: usize,
    /// True when the origin itself failed the threshold and nothing was grown.
    pub origin_rejected: bool,
}

impl PhaseGrowth {
    pub fn acceptance_ratio(&self) -> f64 {
        if self.tested == 0 {
            0.0
        } else {
            self.accepted as f64 / self.tested as f64
        }
    }
}

/// Breadth-first growth from the origin by unit decagon steps, keeping
/// candidates with `f(z) ≥ threshold` that lie in `region`.
///
/// Positions are tracked as exact ring elements, so revisits are detected
/// without a distance tolerance.
pub fn phase_points(threshold: f64, region: &Region2D, max_points: usize) -> PhaseGrowth {
    let mut out = PhaseGrowth::default();
    if max_points == 0 {
        return out;
    }
    let origin = CycloInt::ZERO;
    if phase_eval(origin.embed()) < threshold || !region.contains(origin.embed()) {
        out.origin_rejected = true;
        return out;
    }
    let steps: Vec<CycloInt> = (0..10).map(CycloInt::zeta_pow).collect();
    let mut seen = HashSet::from([origin]);
    let mut queue = VecDeque::from([origin]);
    out.coeffs.push(origin);
    out.points.push(origin.embed());
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            if out.coeffs.len() >= max_points {
                return out;
            }
            let c = x.checked_add(*s).expect("bounded by region");
            if !seen.insert(c) {
                continue;
            }
            let p = c.embed();
            if !region.contains(p) {
                continue;
            }
            out.tested += 1;
            if phase_eval(p) >= threshold {
                out.accepted += 1;
                out.coeffs.push(c);
                out.points.push(p);
                queue.push_back(c);
            }
        }
    }
    out
}
