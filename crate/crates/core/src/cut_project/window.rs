use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::geometry::{Point, Rect};
use crate::golden_ring::{GoldenInt, GoldenPoint};

/// Relative tolerance of window membership tests.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// A real interval with explicit boundary inclusion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Self {
        Interval { lo, hi, lo_closed, hi_closed }
    }

    /// `[lo, hi)`, the default acceptance convention.
    pub fn half_open(lo: f64, hi: f64) -> Self {
        Interval::new(lo, hi, true, false)
    }

    /// `[lo, hi]`.
    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval::new(lo, hi, true, true)
    }

    pub fn empty() -> Self {
        Interval::new(0.0, 0.0, false, false)
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi || (self.lo == self.hi && self.lo_closed && self.hi_closed))
    }

    pub fn len(&self) -> f64 {
        (self.hi - self.lo).max(0.0)
    }

    fn tol(&self) -> f64 {
        MEMBERSHIP_TOL * self.lo.abs().max(self.hi.abs()).max(1.0)
    }

    pub fn contains(&self, x: f64) -> bool {
        if self.is_empty() {
            return false;
        }
        let t = self.tol();
        let lo_ok = if self.lo_closed { x >= self.lo - t } else { x > self.lo + t };
        let hi_ok = if self.hi_closed { x <= self.hi + t } else { x < self.hi - t };
        lo_ok && hi_ok
    }
}

/// Shape of a planar window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RegionKind {
    /// Regular decagon with circumradius `radius`; vertex `k` sits at angle `2πk/10 + rotation`.
    Decagon { radius: f64, rotation: f64 },
    Disk { radius: f64 },
    Rectangle { half_width: f64, half_height: f64 },
}

/// A bounded planar window with an explicit boundary convention.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Region2D {
    pub kind: RegionKind,
    pub center: Point,
    pub boundary_closed: bool,
}

/// Order key of a point's scale within a window, exact where the window allows it.
#[derive(Clone, Copy, Debug, PartialEq)]
enum GaugeKey {
    Exact(GoldenInt),
    Float(f64),
}

impl Region2D {
    pub fn decagon(radius: f64) -> Self {
        Region2D {
            kind: RegionKind::Decagon { radius, rotation: 0.0 },
            center: Point::new(0.0, 0.0),
            boundary_closed: true,
        }
    }

    pub fn disk(radius: f64) -> Self {
        Region2D { kind: RegionKind::Disk { radius }, center: Point::new(0.0, 0.0), boundary_closed: true }
    }

    pub fn square(half_extent: f64) -> Self {
        Region2D::rectangle(Point::new(0.0, 0.0), half_extent, half_extent)
    }

    pub fn rectangle(center: Point, half_width: f64, half_height: f64) -> Self {
        Region2D { kind: RegionKind::Rectangle { half_width, half_height }, center, boundary_closed: true }
    }

    pub fn with_center(mut self, center: Point) -> Self {
        self.center = center;
        self
    }

    pub fn with_rotation(mut self, rot: f64) -> Self {
        if let RegionKind::Decagon { rotation, .. } = &mut self.kind {
            *rotation = rot;
        }
        self
    }

    pub fn with_closed(mut self, closed: bool) -> Self {
        self.boundary_closed = closed;
        self
    }

    /// The same window scaled about its center.
    pub fn scaled(mut self, s: f64) -> Self {
        self.kind = match self.kind {
            RegionKind::Decagon { radius, rotation } => RegionKind::Decagon { radius: radius * s, rotation },
            RegionKind::Disk { radius } => RegionKind::Disk { radius: radius * s },
            RegionKind::Rectangle { half_width, half_height } => {
                RegionKind::Rectangle { half_width: half_width * s, half_height: half_height * s }
            }
        };
        self
    }

    /// Characteristic size: circumradius, radius or the larger half-extent.
    pub fn scale(&self) -> f64 {
        match self.kind {
            RegionKind::Decagon { radius, .. } | RegionKind::Disk { radius } => radius,
            RegionKind::Rectangle { half_width, half_height } => half_width.max(half_height),
        }
    }

    /// True when the window has positive area.
    pub fn is_proper(&self) -> bool {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        self.center.x.is_finite()
            && self.center.y.is_finite()
            && match self.kind {
                RegionKind::Decagon { radius, rotation } => ok(radius) && rotation.is_finite(),
                RegionKind::Disk { radius } => ok(radius),
                RegionKind::Rectangle { half_width, half_height } => ok(half_width) && ok(half_height),
            }
    }

    pub fn bbox(&self) -> Rect {
        let (hx, hy) = match self.kind {
            RegionKind::Decagon { radius, rotation } => {
                let (mut hx, mut hy) = (0.0f64, 0.0f64);
                for k in 0..10 {
                    let a = 2.0 * PI * k as f64 / 10.0 + rotation;
                    hx = hx.max((radius * a.cos()).abs());
                    hy = hy.max((radius * a.sin()).abs());
                }
                (hx, hy)
            }
            RegionKind::Disk { radius } => (radius, radius),
            RegionKind::Rectangle { half_width, half_height } => (half_width, half_height),
        };
        let h = Point::new(hx, hy);
        Rect::new(self.center - h, self.center + h)
    }

    /// The gauge of `p`: the smallest scale factor of the window (about its
    /// center) whose closure contains `p`.
    pub fn gauge(&self, p: Point) -> f64 {
        let d = p - self.center;
        match self.kind {
            RegionKind::Decagon { radius, rotation } => {
                let apothem = radius * (PI / 10.0).cos();
                let m = (0..10)
                    .map(|k| {
                        let a = 2.0 * PI * (k as f64 + 0.5) / 10.0 + rotation;
                        d.x * a.cos() + d.y * a.sin()
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                m / apothem
            }
            RegionKind::Disk { radius } => d.norm() / radius,
            RegionKind::Rectangle { half_width, half_height } => (d.x.abs() / half_width).max(d.y.abs() / half_height),
        }
    }

    /// Membership under the window's boundary convention, with tolerance
    /// `1e-12 · max(1, scale)` in the window's linear units.
    pub fn contains(&self, p: Point) -> bool {
        let tol = MEMBERSHIP_TOL * self.scale().max(1.0);
        let d = p - self.center;
        let (slack, limit) = match self.kind {
            RegionKind::Decagon { radius, rotation } => {
                let apothem = radius * (PI / 10.0).cos();
                let m = (0..10)
                    .map(|k| {
                        let a = 2.0 * PI * (k as f64 + 0.5) / 10.0 + rotation;
                        d.x * a.cos() + d.y * a.sin()
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                (m, apothem)
            }
            RegionKind::Disk { radius } => (d.norm(), radius),
            RegionKind::Rectangle { half_width, half_height } => {
                let m = (d.x.abs() - half_width).max(d.y.abs() - half_height);
                (m, 0.0)
            }
        };
        if self.boundary_closed {
            slack <= limit + tol
        } else {
            slack < limit - tol
        }
    }

    /// Exact decagon normals are available when the decagon is centered at the
    /// origin and rotated by a multiple of π/10. Returns that multiple mod 20.
    fn exact_decagon_step(&self) -> Option<usize> {
        match self.kind {
            RegionKind::Decagon { rotation, .. } if self.center == Point::new(0.0, 0.0) => {
                let m = rotation / (PI / 10.0);
                let r = m.round();
                ((m - r).abs() < 1e-9).then(|| r.rem_euclid(20.0) as usize)
            }
            _ => None,
        }
    }

    fn gauge_key(&self, s: GoldenPoint) -> GaugeKey {
        let origin = self.center == Point::new(0.0, 0.0);
        match self.kind {
            RegionKind::Disk { .. } if origin => GaugeKey::Exact(s.norm4()),
            RegionKind::Decagon { .. } => match self.exact_decagon_step() {
                Some(m) => GaugeKey::Exact(exact_decagon_support(s, m)),
                None => GaugeKey::Float(self.gauge(s.to_point())),
            },
            _ => GaugeKey::Float(self.gauge(s.to_point())),
        }
    }

    /// Progressive order of star images: by gauge, then polar angle about the
    /// window center in `[0, 2π)`, then by `tiebreak`.
    pub(crate) fn cmp_progressive(&self, a: GoldenPoint, b: GoldenPoint) -> Ordering {
        let g = match (self.gauge_key(a), self.gauge_key(b)) {
            (GaugeKey::Exact(x), GaugeKey::Exact(y)) => x.cmp(&y),
            (GaugeKey::Float(x), GaugeKey::Float(y)) => x.total_cmp(&y),
            _ => unreachable!("one window yields one key kind"),
        };
        g.then_with(|| {
            if self.center == Point::new(0.0, 0.0) {
                a.cmp_angle(b)
            } else {
                let ang = |p: GoldenPoint| {
                    let d = p.to_point() - self.center;
                    d.y.atan2(d.x).rem_euclid(2.0 * PI)
                };
                ang(a).total_cmp(&ang(b))
            }
        })
    }
}

/// `2cos(36°j)` as `a + bτ`.
const C_EVEN: [(i64, i64); 10] = [(2, 0), (0, 1), (-1, 1), (1, -1), (0, -1), (-2, 0), (0, -1), (1, -1), (-1, 1), (0, 1)];
/// `sin(36°j) / sin 36°`.
const S_EVEN: [(i64, i64); 10] = [(0, 0), (1, 0), (0, 1), (0, 1), (1, 0), (0, 0), (-1, 0), (0, -1), (0, -1), (-1, 0)];
/// `cos(18°(2j+1)) / sin 36°`.
const C_ODD: [(i64, i64); 10] = [(0, 1), (1, 0), (0, 0), (-1, 0), (0, -1), (0, -1), (-1, 0), (0, 0), (1, 0), (0, 1)];
/// `2 sin(18°(2j+1))`.
const S_ODD: [(i64, i64); 10] = [(-1, 1), (0, 1), (2, 0), (0, 1), (-1, 1), (1, -1), (0, -1), (-2, 0), (0, -1), (1, -1)];

fn gi((a, b): (i64, i64)) -> GoldenInt {
    GoldenInt::new(a, b)
}

/// A positive multiple of `max_k s·n_k` over the edge normals of a decagon
/// rotated by `m·π/10`, in `Z[τ]`.
fn exact_decagon_support(s: GoldenPoint, m: usize) -> GoldenInt {
    // normals sit at 18°·(2k + 1 + m)
    let three_minus_tau = GoldenInt::new(3, -1);
    (0..10)
        .map(|k| {
            let step = 2 * k + 1 + m;
            if step.is_multiple_of(2) {
                let j = (step / 2) % 10;
                s.x2 * gi(C_EVEN[j]) + three_minus_tau * s.ys * gi(S_EVEN[j])
            } else {
                let j = ((step - 1) / 2) % 10;
                s.x2 * gi(C_ODD[j]) + s.ys * gi(S_ODD[j])
            }
        })
        .max()
        .expect("ten normals")
}
