//! Adaptive orientation and in-circle predicates.
//!
//! Each predicate first evaluates in floating point and accepts the sign when
//! it clears a forward error bound. Otherwise the inputs are converted to big
//! integers (every finite `f64` is `m · 2^e`) and the determinant is evaluated
//! exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Float, Signed, Zero};

use super::Point;

const EPS: f64 = f64::EPSILON * 0.5;
const CCW_ERRBOUND: f64 = (3.0 + 16.0 * EPS) * EPS;
const ICC_ERRBOUND: f64 = (10.0 + 96.0 * EPS) * EPS;

/// Sign of the orientation determinant: `Greater` when `a, b, c` turn
/// counter-clockwise, `Less` when clockwise, `Equal` when collinear.
pub fn orient2d(a: Point, b: Point, c: Point) -> Ordering {
    let detleft = (a.x - c.x) * (b.y - c.y);
    let detright = (a.y - c.y) * (b.x - c.x);
    let det = detleft - detright;
    let detsum = if detleft > 0.0 {
        if detright <= 0.0 {
            return sign(det);
        }
        detleft + detright
    } else if detleft < 0.0 {
        if detright >= 0.0 {
            return sign(det);
        }
        -detleft - detright
    } else {
        return sign(det);
    };
    let bound = CCW_ERRBOUND * detsum;
    if det >= bound || -det >= bound {
        return sign(det);
    }
    orient2d_exact(a, b, c)
}

/// Sign of the in-circle determinant: `Greater` when `d` lies strictly inside
/// the circle through the counter-clockwise triangle `a, b, c`.
pub fn incircle(a: Point, b: Point, c: Point, d: Point) -> Ordering {
    let (adx, ady) = (a.x - d.x, a.y - d.y);
    let (bdx, bdy) = (b.x - d.x, b.y - d.y);
    let (cdx, cdy) = (c.x - d.x, c.y - d.y);

    let bdxcdy = bdx * cdy;
    let cdxbdy = cdx * bdy;
    let alift = adx * adx + ady * ady;
    let cdxady = cdx * ady;
    let adxcdy = adx * cdy;
    let blift = bdx * bdx + bdy * bdy;
    let adxbdy = adx * bdy;
    let bdxady = bdx * ady;
    let clift = cdx * cdx + cdy * cdy;

    let det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    let permanent = (bdxcdy.abs() + cdxbdy.abs()) * alift
        + (cdxady.abs() + adxcdy.abs()) * blift
        + (adxbdy.abs() + bdxady.abs()) * clift;
    let bound = ICC_ERRBOUND * permanent;
    if det > bound || -det > bound {
        return sign(det);
    }
    incircle_exact(a, b, c, d)
}

/// In-circle test with symbolic perturbation for cocircular inputs.
///
/// `ids` are the global vertex indices of `a, b, c, d`. Each lifted height is
/// raised by an infinitesimal that is larger for lower indices, so a lower
/// index vertex is treated as lying slightly outside. The result is never
/// `Equal` for four distinct points.
pub fn incircle_sos(a: Point, b: Point, c: Point, d: Point, ids: [usize; 4]) -> Ordering {
    let s = incircle(a, b, c, d);
    if s != Ordering::Equal {
        return s;
    }
    // Derivative of the lifted determinant with respect to each height.
    let mut order = [0usize, 1, 2, 3];
    order.sort_by_key(|&k| ids[k]);
    for k in order {
        let t = match k {
            0 => orient2d(b, c, d),
            1 => orient2d(a, c, d).reverse(),
            2 => orient2d(a, b, d),
            _ => orient2d(a, b, c).reverse(),
        };
        if t != Ordering::Equal {
            return t;
        }
    }
    Ordering::Equal
}

fn sign(x: f64) -> Ordering {
    if x > 0.0 {
        Ordering::Greater
    } else if x < 0.0 {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

fn big_sign(x: &BigInt) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Converts coordinates to integers sharing one power-of-two scale.
fn to_integers<const N: usize>(vals: [f64; N]) -> [BigInt; N] {
    let parts = vals.map(|v| {
        let (m, e, s) = v.integer_decode();
        (m, e, s)
    });
    let emin = parts.iter().filter(|p| p.0 != 0).map(|p| p.1).min().unwrap_or(0);
    parts.map(|(m, e, s)| {
        let v = BigInt::from(m) << ((e - emin) as usize);
        if s < 0 {
            -v
        } else {
            v
        }
    })
}

fn orient2d_exact(a: Point, b: Point, c: Point) -> Ordering {
    let [ax, ay, bx, by, cx, cy] = to_integers([a.x, a.y, b.x, b.y, c.x, c.y]);
    let det = (&ax - &cx) * (&by - &cy) - (&ay - &cy) * (&bx - &cx);
    big_sign(&det)
}

fn incircle_exact(a: Point, b: Point, c: Point, d: Point) -> Ordering {
    let [ax, ay, bx, by, cx, cy, dx, dy] = to_integers([a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y]);
    let (adx, ady) = (&ax - &dx, &ay - &dy);
    let (bdx, bdy) = (&bx - &dx, &by - &dy);
    let (cdx, cdy) = (&cx - &dx, &cy - &dy);
    let alift = &adx * &adx + &ady * &ady;
    let blift = &bdx * &bdx + &bdy * &bdy;
    let clift = &cdx * &cdx + &cdy * &cdy;
    let det = alift * (&bdx * &cdy - &cdx * &bdy)
        + blift * (&cdx * &ady - &adx * &cdy)
        + clift * (&adx * &bdy - &bdx * &ady);
    big_sign(&det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orientation_basics() {
        assert_eq!(orient2d(p(0., 0.), p(1., 0.), p(0., 1.)), Ordering::Greater);
        assert_eq!(orient2d(p(0., 0.), p(0., 1.), p(1., 0.)), Ordering::Less);
        assert_eq!(orient2d(p(0., 0.), p(1., 1.), p(2., 2.)), Ordering::Equal);
    }

    #[test]
    fn near_collinear_is_exact() {
        // Points on the line y = x perturbed by one ulp: floats alone get this wrong.
        let a = p(0.5, 0.5);
        let b = p(12.0, 12.0);
        let c = p(24.0, 24.0);
        assert_eq!(orient2d(a, b, c), Ordering::Equal);
        let nudged = p(0.5, f64::from_bits(0.5f64.to_bits() + 1));
        assert_eq!(orient2d(nudged, b, c), orient2d_exact(nudged, b, c));
        assert_ne!(orient2d(nudged, b, c), Ordering::Equal);
        for i in 0..64 {
            for j in 0..64 {
                let q = p(0.5 + i as f64 * f64::EPSILON, 0.5 + j as f64 * f64::EPSILON);
                assert_eq!(orient2d(q, b, c), orient2d_exact(q, b, c), "{i} {j}");
            }
        }
    }

    #[test]
    fn incircle_basics() {
        let (a, b, c) = (p(0., 0.), p(1., 0.), p(0., 1.));
        assert_eq!(incircle(a, b, c, p(0.5, 0.5)), Ordering::Greater);
        assert_eq!(incircle(a, b, c, p(1., 1.)), Ordering::Equal);
        assert_eq!(incircle(a, b, c, p(2., 2.)), Ordering::Less);
    }

    #[test]
    fn incircle_matches_lifted_determinant_sign() {
        // sign of det[[x, y, x²+y², 1]] over rows a, b, c, d equals incircle
        let pts = [p(0., 0.), p(3., 1.), p(1., 4.), p(1., 1.), p(5., 5.), p(-1., 2.)];
        for &d in &pts[3..] {
            let (a, b, c) = (pts[0], pts[1], pts[2]);
            let rows = [a, b, c, d].map(|q| [q.x, q.y, q.norm2(), 1.0]);
            let m = nalgebra::Matrix4::from_fn(|r, k| rows[r][k]);
            assert_eq!(sign(m.determinant()), incircle(a, b, c, d));
        }
    }

    #[test]
    fn sos_breaks_square_ties_consistently() {
        let sq = [p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)];
        // Triangle (0,1,2) against vertex 3: vertex 0 has the lowest index.
        let s1 = incircle_sos(sq[0], sq[1], sq[2], sq[3], [0, 1, 2, 3]);
        // Triangle (0,2,3) against vertex 1.
        let s2 = incircle_sos(sq[0], sq[2], sq[3], sq[1], [0, 2, 3, 1]);
        // Both tests concern the diagonal 0-2 and must agree. Raising vertex 0
        // makes the diagonal 1-3 the Delaunay one, so 0-2 is illegal.
        assert_eq!(s1, Ordering::Greater);
        assert_eq!(s1, s2);
    }

    proptest! {
        #[test]
        fn filter_agrees_with_exact(coords in proptest::array::uniform8(-1000i32..1000)) {
            let f = |k: usize| coords[k] as f64 / 64.0;
            let (a, b, c, d) = (p(f(0), f(1)), p(f(2), f(3)), p(f(4), f(5)), p(f(6), f(7)));
            prop_assert_eq!(orient2d(a, b, c), orient2d_exact(a, b, c));
            prop_assert_eq!(incircle(a, b, c, d), incircle_exact(a, b, c, d));
        }
    }
}
