//! Planar geometry: robust predicates, Delaunay triangulation, Voronoi cells,
//! point location and k-nearest queries.

mod clip;
mod delaunay;
mod knn;
pub mod predicates;
mod voronoi;

use std::ops::{Add, Mul, Sub};

pub use clip::{clip_polygon, polygon_area, HalfPlane};
pub use delaunay::{delaunay, DelaunayBuilder, Locator, Triangulation};
pub use knn::{knearest, GridIndex};
pub use voronoi::{cell_polygon, VoronoiCell, VoronoiDiagram};

/// A point (or vector) in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn dist2(self, o: Point) -> f64 {
        (self - o).norm2()
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    /// Rotation about the origin by `angle` radians.
    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Lexicographic comparison by `x`, then `y`.
    pub fn cmp_lex(&self, o: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// An axis-aligned rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub const UNIT: Rect = Rect { min: Point::new(0.0, 0.0), max: Point::new(1.0, 1.0) };

    pub fn new(min: Point, max: Point) -> Self {
        Rect { min, max }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    /// Corners in counter-clockwise order starting at `min`.
    pub fn corners(&self) -> [Point; 4] {
        [
            self.min,
            Point::new(self.max.x, self.min.y),
            self.max,
            Point::new(self.min.x, self.max.y),
        ]
    }
}
