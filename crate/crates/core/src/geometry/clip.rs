use super::Point;

/// The closed half-plane `{p : normal · p ≤ offset}`, tagged with a label
/// that is carried onto the edges it creates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    pub normal: Point,
    pub offset: f64,
    pub label: Option<usize>,
}

impl HalfPlane {
    /// Points at least as close to `a` as to `b`.
    pub fn bisector(a: Point, b: Point, label: Option<usize>) -> Self {
        HalfPlane { normal: b - a, offset: 0.5 * (b.norm2() - a.norm2()), label }
    }

    pub fn eval(&self, p: Point) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// Sutherland–Hodgman clip of a convex polygon.
///
/// `poly[i].1` labels the edge from vertex `i` to vertex `i + 1`; edges created
/// by the cut get the half-plane's label.
pub fn clip_polygon(poly: &[(Point, Option<usize>)], h: &HalfPlane) -> Vec<(Point, Option<usize>)> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let (cur, lab) = poly[i];
        let (nxt, _) = poly[(i + 1) % n];
        let (dc, dn) = (h.eval(cur), h.eval(nxt));
        let cut = || {
            let t = dc / (dc - dn);
            cur.lerp(nxt, t)
        };
        if dc <= 0.0 {
            out.push((cur, lab));
            if dn > 0.0 {
                out.push((cut(), h.label));
            }
        } else if dn <= 0.0 {
            out.push((cut(), lab));
        }
    }
    // drop consecutive duplicates produced by vertices lying on the cut line
    out.dedup_by(|b, a| a.0 == b.0);
    if out.len() > 1 && out[0].0 == out[out.len() - 1].0 {
        out.pop();
    }
    out
}

/// Signed shoelace area (positive for counter-clockwise polygons).
pub fn polygon_area(poly: &[Point]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    0.5 * (0..n).map(|i| poly[i].cross(poly[(i + 1) % n])).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clip_square_in_half() {
        let sq: Vec<_> = [Point::new(0., 0.), Point::new(1., 0.), Point::new(1., 1.), Point::new(0., 1.)]
            .into_iter()
            .map(|p| (p, None))
            .collect();
        let h = HalfPlane::bisector(Point::new(0.25, 0.5), Point::new(0.75, 0.5), Some(7));
        let c = clip_polygon(&sq, &h);
        let pts: Vec<Point> = c.iter().map(|x| x.0).collect();
        assert!((polygon_area(&pts) - 0.5).abs() < 1e-15);
        assert_eq!(c.iter().filter(|x| x.1 == Some(7)).count(), 1);
        let far = HalfPlane { normal: Point::new(1., 0.), offset: -1.0, label: None };
        assert!(clip_polygon(&sq, &far).is_empty());
    }
}
