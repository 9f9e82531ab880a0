use super::window::Interval;
use super::qc2d::COEFF_LIMIT;
use crate::error::{QcError, Result};
use crate::golden_ring::{GoldenInt, TAU};

/// A point `a + bτ` of a one-dimensional quasicrystal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuasiPoint1 {
    pub coeffs: GoldenInt,
    pub position: f64,
    pub star_image: f64,
    pub rank: usize,
}

const SQRT5: f64 = 2.0 * TAU - 1.0;

fn checked_bound(v: f64) -> Result<i64> {
    if !v.is_finite() || v.abs() > COEFF_LIMIT as f64 {
        return Err(QcError::BoundOverflow { bound: v, limit: COEFF_LIMIT });
    }
    Ok(v as i64)
}

/// All `a + bτ` with star image in `accept` and value in `view`, ascending.
///
/// Ranks follow the ascending position order.
pub fn qc1d(accept: &Interval, view: &Interval) -> Result<Vec<QuasiPoint1>> {
    if accept.is_empty() || view.is_empty() {
        return Ok(Vec::new());
    }
    if accept.len() > 1e3 {
        return Err(QcError::InvalidArgument(format!("acceptance length {} exceeds 1000", accept.len())));
    }
    // value − star = b·√5
    let b_lo = checked_bound(((view.lo - accept.hi) / SQRT5).floor() - 1.0)?;
    let b_hi = checked_bound(((view.hi - accept.lo) / SQRT5).ceil() + 1.0)?;
    let mut out = Vec::new();
    for b in b_lo..=b_hi {
        let bf = b as f64;
        let lo = (view.lo - bf * TAU).max(accept.lo - bf * (1.0 - TAU));
        let hi = (view.hi - bf * TAU).min(accept.hi - bf * (1.0 - TAU));
        if lo > hi + 2.0 {
            continue;
        }
        let a_lo = checked_bound(lo.floor() - 1.0)?;
        let a_hi = checked_bound(hi.ceil() + 1.0)?;
        for a in a_lo..=a_hi {
            let g = GoldenInt::new(a, b);
            if accept.contains(g.star()) && view.contains(g.value()) {
                out.push(g);
            }
        }
    }
    out.sort();
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(rank, g)| QuasiPoint1 { coeffs: g, position: g.value(), star_image: g.star(), rank })
        .collect())
}
