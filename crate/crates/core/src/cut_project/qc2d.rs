use std::ops::RangeInclusive;

use nalgebra::Matrix2;
use rayon::prelude::*;

use super::window::Region2D;
use crate::error::{QcError, Result};
use crate::geometry::{Point, Rect};
use crate::golden_ring::{CycloInt, EmbeddingMatrix};

/// Largest coefficient magnitude the enumeration will visit.
pub const COEFF_LIMIT: i64 = 1_000_000;

/// A point of a planar quasicrystal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuasiPoint {
    pub coeffs: CycloInt,
    pub position: Point,
    pub star_image: Point,
    /// Position in the progressive order, or in enumeration order before ordering.
    pub rank: usize,
}

impl QuasiPoint {
    pub fn new(coeffs: CycloInt, rank: usize) -> Self {
        QuasiPoint { coeffs, position: coeffs.embed(), star_image: coeffs.star(), rank }
    }
}

fn to_range(center: f64, half: f64) -> Result<RangeInclusive<i64>> {
    let lo = (center - half - 1e-9).floor();
    let hi = (center + half + 1e-9).ceil();
    for v in [lo, hi] {
        if !v.is_finite() || v.abs() > COEFF_LIMIT as f64 {
            return Err(QcError::BoundOverflow { bound: v, limit: COEFF_LIMIT });
        }
    }
    Ok(lo as i64..=hi as i64)
}

fn intersect(a: &RangeInclusive<i64>, b: &RangeInclusive<i64>) -> RangeInclusive<i64> {
    *a.start().max(b.start())..=*a.end().min(b.end())
}

/// Integer ranges containing every `n = A⁻¹ v` for `v` in the box `lo..hi` (interval arithmetic).
fn box_ranges<const N: usize>(inv: &[[f64; N]; N], lo: [f64; N], hi: [f64; N]) -> Result<[RangeInclusive<i64>; N]> {
    let mid: Vec<f64> = (0..N).map(|j| 0.5 * (lo[j] + hi[j])).collect();
    let half: Vec<f64> = (0..N).map(|j| 0.5 * (hi[j] - lo[j])).collect();
    let mut out: [RangeInclusive<i64>; N] = std::array::from_fn(|_| 0..=0);
    for i in 0..N {
        let c: f64 = (0..N).map(|j| inv[i][j] * mid[j]).sum();
        let h: f64 = (0..N).map(|j| inv[i][j].abs() * half[j]).sum();
        out[i] = to_range(c, h)?;
    }
    Ok(out)
}

/// The planar quasicrystal: every `Σ nₖζᵏ` with embedding in `view` and star image in `accept`.
///
/// Output is in lexicographic coefficient order with `rank` set to that index.
pub fn qc2d(accept: &Region2D, view: &Region2D) -> Result<Vec<QuasiPoint>> {
    if !accept.is_proper() || !view.is_proper() {
        return Ok(Vec::new());
    }
    let m = EmbeddingMatrix::new();
    let inv = m.inverse;
    let inv4: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| inv[(i, j)]));
    let (vb, ab): (Rect, Rect) = (view.bbox(), accept.bbox());
    let global = box_ranges(
        &inv4,
        [vb.min.x, vb.min.y, ab.min.x, ab.min.y],
        [vb.max.x, vb.max.y, ab.max.x, ab.max.y],
    )?;

    // (n2, n3) from the residual once n0, n1 are fixed, for each of the two planes
    let sub = |r: usize| Matrix2::new(m.forward[(r, 2)], m.forward[(r, 3)], m.forward[(r + 1, 2)], m.forward[(r + 1, 3)]);
    let inv_e = sub(0).try_inverse().expect("invertible embedding block");
    let inv_s = sub(2).try_inverse().expect("invertible star block");
    let as_arr = |a: Matrix2<f64>| [[a[(0, 0)], a[(0, 1)]], [a[(1, 0)], a[(1, 1)]]];
    let (inv_e, inv_s) = (as_arr(inv_e), as_arr(inv_s));
    let col = |k: usize| [m.forward[(0, k)], m.forward[(1, k)], m.forward[(2, k)], m.forward[(3, k)]];
    let (c0, c1) = (col(0), col(1));

    let n0s: Vec<i64> = global[0].clone().collect();
    let chunks: Result<Vec<Vec<CycloInt>>> = n0s
        .par_iter()
        .map(|&n0| {
            let mut found = Vec::new();
            for n1 in global[1].clone() {
                let off: Vec<f64> = (0..4).map(|r| n0 as f64 * c0[r] + n1 as f64 * c1[r]).collect();
                let e = box_ranges(
                    &inv_e,
                    [vb.min.x - off[0], vb.min.y - off[1]],
                    [vb.max.x - off[0], vb.max.y - off[1]],
                )?;
                let s = box_ranges(
                    &inv_s,
                    [ab.min.x - off[2], ab.min.y - off[3]],
                    [ab.max.x - off[2], ab.max.y - off[3]],
                )?;
                let r2 = intersect(&intersect(&e[0], &s[0]), &global[2]);
                let r3 = intersect(&intersect(&e[1], &s[1]), &global[3]);
                for n2 in r2 {
                    for n3 in r3.clone() {
                        let c = CycloInt::new([n0, n1, n2, n3]);
                        if view.contains(c.embed()) && accept.contains(c.star()) {
                            found.push(c);
                        }
                    }
                }
            }
            Ok(found)
        })
        .collect();
    Ok(chunks?
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(i, c)| QuasiPoint::new(c, i))
        .collect())
}

/// Sorts points by the gauge of their star image in `accept`, then by polar
/// angle of the star image, then by position; assigns ranks `0..n`.
///
/// For origin-centered disks and for origin-centered decagons rotated by a
/// multiple of π/10 the comparison is exact. Every prefix that ends at a
/// change of gauge is the quasicrystal of the correspondingly shrunk window.
pub fn progressive_order(mut points: Vec<QuasiPoint>, accept: &Region2D) -> Vec<QuasiPoint> {
    points.sort_by(|a, b| {
        let (sa, sb) = (a.coeffs.star_exact(), b.coeffs.star_exact());
        accept
            .cmp_progressive(sa, sb)
            .then_with(|| a.coeffs.embed_exact().cmp_lex(b.coeffs.embed_exact()))
            .then_with(|| a.coeffs.cmp(&b.coeffs))
    });
    for (i, p) in points.iter_mut().enumerate() {
        p.rank = i;
    }
    points
}
