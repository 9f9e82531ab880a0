//! Incremental Bowyer–Watson Delaunay triangulation.
//!
//! Instead of an explicit super-triangle the builder keeps one "ghost"
//! triangle `(u, w, ∞)` outside every convex hull edge. A ghost conflicts with
//! a new point when the point lies strictly beyond its hull edge, or on the
//! open edge itself. Cocircular ties are resolved by [`incircle_sos`], so the
//! result depends only on the input order.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

use super::predicates::{incircle_sos, orient2d};
use super::Point;
use crate::error::{QcError, Result};

const GHOST: usize = usize::MAX;
const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug)]
struct Tri {
    v: [usize; 3],
    nb: [usize; 3],
    alive: bool,
}

impl Tri {
    fn is_ghost(&self) -> bool {
        self.v[2] == GHOST
    }

    fn slot(&self, vertex: usize) -> usize {
        self.v.iter().position(|&x| x == vertex).expect("vertex in triangle")
    }
}

/// Incremental Delaunay construction.
///
/// Points that arrive while every point so far is collinear are held back
/// until a non-collinear one appears; the first non-collinear triple seeds the
/// mesh and the held points are then inserted in their original order.
#[derive(Clone, Debug, Default)]
pub struct DelaunayBuilder {
    pts: Vec<Point>,
    tris: Vec<Tri>,
    free: Vec<usize>,
    vert_tri: Vec<usize>,
    last: usize,
    seen: HashSet<(u64, u64)>,
    started: bool,
}

fn key(p: Point) -> (u64, u64) {
    // +0.0 and -0.0 are the same point
    ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits())
}

impl DelaunayBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn points(&self) -> &[Point] {
        &self.pts
    }

    /// True once a non-collinear triple has been seen.
    pub fn is_triangulated(&self) -> bool {
        self.started
    }

    /// Inserts a point and returns its index.
    pub fn insert(&mut self, p: Point) -> Result<usize> {
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(QcError::InvalidArgument(format!("non-finite point ({}, {})", p.x, p.y)));
        }
        let id = self.pts.len();
        if !self.seen.insert(key(p)) {
            return Err(QcError::DuplicatePoint(id));
        }
        self.pts.push(p);
        self.vert_tri.push(NONE);
        if self.started {
            self.insert_vertex(id);
        } else if id >= 2 {
            let (a, b) = (self.pts[0], self.pts[1]);
            if orient2d(a, b, p) != Ordering::Equal {
                self.seed(0, 1, id);
                for k in 2..id {
                    self.insert_vertex(k);
                }
            }
        }
        Ok(id)
    }

    /// Finite vertices sharing a Delaunay edge with `v`, in counter-clockwise order.
    pub fn vertex_neighbors(&self, v: usize) -> Vec<usize> {
        if !self.started {
            return Vec::new();
        }
        let t0 = self.vert_tri[v];
        let mut out = Vec::new();
        let mut t = t0;
        loop {
            let tri = &self.tris[t];
            let i = tri.slot(v);
            let next = tri.v[(i + 1) % 3];
            if next != GHOST {
                out.push(next);
            }
            // rotate counter-clockwise about v: cross edge (v, v[i+2])
            t = tri.nb[(i + 1) % 3];
            if t == t0 {
                break;
            }
        }
        out
    }

    fn alloc(&mut self, tri: Tri) -> usize {
        let id = if let Some(id) = self.free.pop() {
            self.tris[id] = tri;
            id
        } else {
            self.tris.push(tri);
            self.tris.len() - 1
        };
        for &v in &tri.v {
            if v != GHOST {
                self.vert_tri[v] = id;
            }
        }
        id
    }

    fn seed(&mut self, a: usize, b: usize, c: usize) {
        let (a, b, c) = if orient2d(self.pts[a], self.pts[b], self.pts[c]) == Ordering::Greater {
            (a, b, c)
        } else {
            (a, c, b)
        };
        let blank = Tri { v: [0; 3], nb: [NONE; 3], alive: true };
        let t = self.alloc(Tri { v: [a, b, c], ..blank });
        // ghost beyond edge (x, y) of the finite triangle is (y, x, ∞)
        let gab = self.alloc(Tri { v: [b, a, GHOST], ..blank });
        let gbc = self.alloc(Tri { v: [c, b, GHOST], ..blank });
        let gca = self.alloc(Tri { v: [a, c, GHOST], ..blank });
        self.tris[t].nb = [gbc, gca, gab];
        // ghost (y, x, ∞): opposite y is edge (x, ∞), opposite x is edge (∞, y)
        self.tris[gab].nb = [gca, gbc, t];
        self.tris[gbc].nb = [gab, gca, t];
        self.tris[gca].nb = [gbc, gab, t];
        self.last = t;
        self.started = true;
    }

    fn conflicts(&self, t: usize, p: usize) -> bool {
        let tri = &self.tris[t];
        let q = self.pts[p];
        if tri.is_ghost() {
            let (u, w) = (self.pts[tri.v[0]], self.pts[tri.v[1]]);
            match orient2d(u, w, q) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => strictly_between(u, w, q),
            }
        } else {
            let [a, b, c] = tri.v;
            incircle_sos(self.pts[a], self.pts[b], self.pts[c], q, [a, b, c, p]) == Ordering::Greater
        }
    }

    /// Finds one triangle in conflict with point `p`.
    fn find_conflict(&self, p: usize) -> usize {
        let q = self.pts[p];
        let mut t = self.last;
        if !self.tris[t].alive {
            t = self.tris.iter().position(|x| x.alive).expect("live triangle");
        }
        let cap = 4 * self.tris.len() + 64;
        for _ in 0..cap {
            let tri = self.tris[t];
            if tri.is_ghost() {
                if self.conflicts(t, p) {
                    return t;
                }
                return self.walk_hull(t, p);
            }
            let mut moved = false;
            for k in 0..3 {
                let (a, b) = (self.pts[tri.v[(k + 1) % 3]], self.pts[tri.v[(k + 2) % 3]]);
                if orient2d(a, b, q) == Ordering::Less {
                    t = tri.nb[k];
                    moved = true;
                    break;
                }
            }
            if !moved {
                // inside the closed triangle
                return t;
            }
        }
        (0..self.tris.len())
            .find(|&t| self.tris[t].alive && self.conflicts(t, p))
            .expect("some triangle conflicts with a new point")
    }

    /// Walks along the ghost ring in both directions until a conflicting ghost is found.
    fn walk_hull(&self, start: usize, p: usize) -> usize {
        let (mut fwd, mut back) = (start, start);
        loop {
            // ghost (u, w, ∞): nb[0] shares w, nb[1] shares u
            fwd = self.tris[fwd].nb[0];
            if self.conflicts(fwd, p) {
                return fwd;
            }
            back = self.tris[back].nb[1];
            if self.conflicts(back, p) {
                return back;
            }
            assert!(fwd != start, "no conflicting hull edge");
        }
    }

    fn insert_vertex(&mut self, p: usize) {
        let seed = self.find_conflict(p);
        let mut cavity = vec![seed];
        let mut in_cavity = HashSet::from([seed]);
        let mut queue = VecDeque::from([seed]);
        while let Some(t) = queue.pop_front() {
            for k in 0..3 {
                let n = self.tris[t].nb[k];
                if !in_cavity.contains(&n) && self.conflicts(n, p) {
                    in_cavity.insert(n);
                    cavity.push(n);
                    queue.push_back(n);
                }
            }
        }

        // boundary edges (a, b) seen from inside the cavity, with the outer neighbour
        let mut boundary = Vec::new();
        for &t in &cavity {
            let tri = self.tris[t];
            for k in 0..3 {
                if !in_cavity.contains(&tri.nb[k]) {
                    boundary.push((tri.v[(k + 1) % 3], tri.v[(k + 2) % 3], tri.nb[k]));
                }
            }
        }
        for &t in &cavity {
            self.tris[t].alive = false;
            self.free.push(t);
        }

        let mut by_start: HashMap<usize, usize> = HashMap::with_capacity(boundary.len());
        let mut by_end: HashMap<usize, usize> = HashMap::with_capacity(boundary.len());
        let mut created = Vec::with_capacity(boundary.len());
        for &(a, b, outer) in &boundary {
            let v = if a == GHOST {
                [b, p, GHOST]
            } else if b == GHOST {
                [p, a, GHOST]
            } else {
                [a, b, p]
            };
            let t = self.alloc(Tri { v, nb: [NONE; 3], alive: true });
            // link across (a, b)
            let slot_p = self.tris[t].slot(p);
            self.tris[t].nb[slot_p] = outer;
            let o = &mut self.tris[outer];
            let back = (0..3)
                .find(|&k| {
                    let (x, y) = (o.v[(k + 1) % 3], o.v[(k + 2) % 3]);
                    x == b && y == a
                })
                .expect("outer triangle shares the boundary edge");
            o.nb[back] = t;
            by_start.insert(a, t);
            by_end.insert(b, t);
            created.push((a, b, t));
        }
        for &(a, b, t) in &created {
            // new triangle (a, b, p): edge (b, p) is shared with the triangle starting at b,
            // edge (p, a) with the triangle ending at a
            let tri = self.tris[t];
            let sa = tri.slot(a);
            let sb = tri.slot(b);
            self.tris[t].nb[sa] = by_start[&b];
            self.tris[t].nb[sb] = by_end[&a];
        }
        self.last = created.iter().map(|c| c.2).find(|&t| !self.tris[t].is_ghost()).unwrap_or(created[0].2);
    }

    /// Freezes the mesh into a [`Triangulation`].
    pub fn finish(&self) -> Result<Triangulation> {
        if !self.started {
            return Err(QcError::Degenerate(if self.pts.len() < 3 {
                format!("{} points cannot be triangulated", self.pts.len())
            } else {
                "all points are collinear".into()
            }));
        }
        let mut remap = vec![NONE; self.tris.len()];
        let mut triangles = Vec::new();
        for (i, t) in self.tris.iter().enumerate() {
            if t.alive && !t.is_ghost() {
                remap[i] = triangles.len();
                triangles.push(t.v);
            }
        }
        let mut neighbors = Vec::with_capacity(triangles.len());
        let mut hull_next: HashMap<usize, usize> = HashMap::new();
        for t in self.tris.iter() {
            if !t.alive {
                continue;
            }
            if t.is_ghost() {
                // finite side runs w -> u counter-clockwise
                hull_next.insert(t.v[1], t.v[0]);
            } else {
                neighbors.push(t.nb.map(|n| {
                    let r = remap[n];
                    (r != NONE).then_some(r)
                }));
            }
        }
        let start = *hull_next.keys().min().expect("non-empty hull");
        let mut hull = vec![start];
        let mut v = hull_next[&start];
        while v != start {
            hull.push(v);
            v = hull_next[&v];
        }
        let mut vertex_triangle = vec![NONE; self.pts.len()];
        for (i, tri) in triangles.iter().enumerate() {
            for &v in tri {
                if vertex_triangle[v] == NONE {
                    vertex_triangle[v] = i;
                }
            }
        }
        Ok(Triangulation { vertices: self.pts.clone(), triangles, neighbors, hull, vertex_triangle })
    }
}

fn strictly_between(u: Point, w: Point, q: Point) -> bool {
    let d = (q - u).dot(w - u);
    d > 0.0 && d < (w - u).norm2() && q != u && q != w
}

/// Builds the Delaunay triangulation of `points` by inserting them in order.
pub fn delaunay(points: &[Point]) -> Result<Triangulation> {
    if points.len() < 3 {
        return Err(QcError::Degenerate(format!("{} points cannot be triangulated", points.len())));
    }
    let mut b = DelaunayBuilder::new();
    for &p in points {
        b.insert(p)?;
    }
    b.finish()
}

/// A planar Delaunay triangulation.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub vertices: Vec<Point>,
    /// Counter-clockwise vertex triples.
    pub triangles: Vec<[usize; 3]>,
    /// `neighbors[t][k]` is the triangle across the edge opposite vertex `k`.
    pub neighbors: Vec<[Option<usize>; 3]>,
    /// Convex hull boundary in counter-clockwise order, including collinear boundary points.
    pub hull: Vec<usize>,
    vertex_triangle: Vec<usize>,
}

impl Triangulation {
    pub fn triangle_points(&self, t: usize) -> [Point; 3] {
        self.triangles[t].map(|v| self.vertices[v])
    }

    pub fn area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangle_points(t);
        0.5 * (b - a).cross(c - a)
    }

    /// Triangles incident to vertex `v`, counter-clockwise.
    pub fn vertex_triangles(&self, v: usize) -> Vec<usize> {
        let t0 = self.vertex_triangle[v];
        if t0 == NONE {
            return Vec::new();
        }
        let mut out = vec![t0];
        let mut t = t0;
        loop {
            let i = slot(&self.triangles[t], v);
            match self.neighbors[t][(i + 1) % 3] {
                Some(n) if n == t0 => return out,
                Some(n) => {
                    out.push(n);
                    t = n;
                }
                None => break,
            }
        }
        // hit the hull; sweep the other way from the start
        let mut t = t0;
        loop {
            let i = slot(&self.triangles[t], v);
            match self.neighbors[t][(i + 2) % 3] {
                Some(n) => {
                    out.insert(0, n);
                    t = n;
                }
                None => return out,
            }
        }
    }

    /// Vertices sharing a Delaunay edge with `v`.
    pub fn vertex_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for t in self.vertex_triangles(v) {
            for &w in &self.triangles[t] {
                if w != v && !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// All undirected edges as `(lo, hi)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |k| (t[k].min(t[(k + 1) % 3]), t[k].max(t[(k + 1) % 3]))))
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    /// True when `q` lies in the closed triangle `t`.
    pub fn contains(&self, t: usize, q: Point) -> bool {
        let [a, b, c] = self.triangle_points(t);
        orient2d(a, b, q) != Ordering::Less
            && orient2d(b, c, q) != Ordering::Less
            && orient2d(c, a, q) != Ordering::Less
    }

    /// Barycentric coordinates of `q` with respect to triangle `t`.
    pub fn barycentric(&self, t: usize, q: Point) -> [f64; 3] {
        let [a, b, c] = self.triangle_points(t);
        let d = (b - a).cross(c - a);
        let wa = (b - q).cross(c - q) / d;
        let wb = (c - q).cross(a - q) / d;
        [wa, wb, 1.0 - wa - wb]
    }

    /// Point location from scratch. See [`Locator`] for repeated queries.
    pub fn locate(&self, q: Point) -> Option<usize> {
        Locator::new(self).locate(q)
    }

    pub fn locator(&self) -> Locator<'_> {
        Locator::new(self)
    }
}

fn slot(t: &[usize; 3], v: usize) -> usize {
    t.iter().position(|&x| x == v).expect("vertex in triangle")
}

/// Walking point location with a cached starting triangle.
///
/// Each querying context owns its own locator; the triangulation itself is
/// never mutated.
#[derive(Debug)]
pub struct Locator<'a> {
    tri: &'a Triangulation,
    last: Cell<usize>,
}

impl<'a> Locator<'a> {
    pub fn new(tri: &'a Triangulation) -> Self {
        Locator { tri, last: Cell::new(0) }
    }

    /// The containing triangle of `q`, or `None` outside the hull. Points on
    /// shared edges or vertices go to the lowest-index containing triangle.
    pub fn locate(&self, q: Point) -> Option<usize> {
        let tr = self.tri;
        if tr.triangles.is_empty() {
            return None;
        }
        let mut t = self.last.get().min(tr.triangles.len() - 1);
        let cap = 4 * tr.triangles.len() + 64;
        let mut found = None;
        for _ in 0..cap {
            let [a, b, c] = tr.triangle_points(t);
            let o = [orient2d(b, c, q), orient2d(c, a, q), orient2d(a, b, q)];
            match (0..3).find(|&k| o[k] == Ordering::Less) {
                None => {
                    found = Some((t, o));
                    break;
                }
                // a missing neighbour means q is strictly beyond a hull edge
                Some(k) => t = tr.neighbors[t][k]?,
            }
        }
        let Some((t, o)) = found else {
            return self.scan(q);
        };
        self.last.set(t);
        let zeros: Vec<usize> = (0..3).filter(|&k| o[k] == Ordering::Equal).collect();
        Some(match zeros.len() {
            0 => t,
            1 => {
                let k = zeros[0];
                tr.neighbors[t][k].map_or(t, |n| t.min(n))
            }
            _ => {
                // on a vertex: the one not opposite any zero edge
                let v = tr.triangles[t][(0..3).find(|k| !zeros.contains(k)).unwrap_or(0)];
                tr.vertex_triangles(v).into_iter().min().unwrap_or(t)
            }
        })
    }

    fn scan(&self, q: Point) -> Option<usize> {
        (0..self.tri.triangles.len()).find(|&t| self.tri.contains(t, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn random_points(n: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect()
    }

    /// Independent monotone-chain hull, counting collinear boundary points.
    fn hull_count(pts: &[Point]) -> usize {
        let mut p = pts.to_vec();
        p.sort_by(|a, b| a.cmp_lex(b));
        let cross = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
        let mut lower: Vec<Point> = Vec::new();
        for &q in &p {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) < 0.0 {
                lower.pop();
            }
            lower.push(q);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &q in p.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) < 0.0 {
                upper.pop();
            }
            upper.push(q);
        }
        lower.len() + upper.len() - 2
    }

    pub(crate) fn assert_delaunay(t: &Triangulation) {
        for (i, tri) in t.triangles.iter().enumerate() {
            let [a, b, c] = t.triangle_points(i);
            assert_eq!(orient2d(a, b, c), Ordering::Greater, "triangle {i} not ccw");
            for (v, &q) in t.vertices.iter().enumerate() {
                if tri.contains(&v) {
                    continue;
                }
                assert_ne!(super::super::predicates::incircle(a, b, c, q), Ordering::Greater);
            }
        }
    }

    #[test]
    fn three_points_one_triangle() {
        let t = delaunay(&[Point::new(0., 0.), Point::new(1., 0.), Point::new(0., 1.)]).unwrap();
        assert_eq!(t.triangles.len(), 1);
        assert_eq!(t.hull.len(), 3);
    }

    #[test]
    fn unit_square_diagonal_follows_tie_rule() {
        let sq = [Point::new(0., 0.), Point::new(1., 0.), Point::new(1., 1.), Point::new(0., 1.)];
        let t = delaunay(&sq).unwrap();
        assert_eq!(t.triangles.len(), 2);
        // vertex 0 is perturbed outward, so the diagonal joins vertices 1 and 3
        assert!(t.edges().contains(&(1, 3)));
        assert!(!t.edges().contains(&(0, 2)));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(delaunay(&[Point::new(0., 0.), Point::new(1., 0.)]), Err(QcError::Degenerate(_))));
        let line: Vec<Point> = (0..5).map(|i| Point::new(i as f64, 2.0 * i as f64)).collect();
        assert!(matches!(delaunay(&line), Err(QcError::Degenerate(_))));
        let dup = [Point::new(0., 0.), Point::new(1., 0.), Point::new(0., 1.), Point::new(1., 0.)];
        assert_eq!(delaunay(&dup).unwrap_err(), QcError::DuplicatePoint(3));
    }

    #[test]
    fn collinear_prefix_then_lift() {
        let mut pts: Vec<Point> = (0..6).map(|i| Point::new(i as f64, 0.0)).collect();
        pts.push(Point::new(2.5, 1.0));
        let t = delaunay(&pts).unwrap();
        assert_eq!(t.triangles.len(), 5);
        assert_eq!(t.hull.len(), 7);
        assert_delaunay(&t);
    }

    #[test]
    fn euler_formula_on_random_sets() {
        for seed in 0..100 {
            let pts = random_points(100, seed);
            let t = delaunay(&pts).unwrap();
            let h = hull_count(&pts);
            assert_eq!(t.hull.len(), h);
            assert_eq!(t.triangles.len(), 2 * 100 - 2 - h, "seed {seed}");
        }
    }

    #[test]
    fn empty_circumcircle_random_and_grid() {
        assert_delaunay(&delaunay(&random_points(500, 7)).unwrap());
        // a grid is full of cocircular quadruples
        let grid: Vec<Point> =
            (0..20).flat_map(|i| (0..20).map(move |j| Point::new(i as f64 * 0.05, j as f64 * 0.05))).collect();
        let t = delaunay(&grid).unwrap();
        assert_delaunay(&t);
        assert_eq!(t.triangles.len(), 2 * 400 - 2 - 76);
    }

    #[test]
    fn neighbors_are_symmetric() {
        let t = delaunay(&random_points(300, 3)).unwrap();
        for (i, nb) in t.neighbors.iter().enumerate() {
            for k in 0..3 {
                if let Some(n) = nb[k] {
                    assert!(t.neighbors[n].contains(&Some(i)));
                    let (a, b) = (t.triangles[i][(k + 1) % 3], t.triangles[i][(k + 2) % 3]);
                    assert!(t.triangles[n].contains(&a) && t.triangles[n].contains(&b));
                }
            }
        }
    }

    #[test]
    fn builder_reports_vertex_neighbors() {
        let pts = random_points(200, 11);
        let mut b = DelaunayBuilder::new();
        for &p in &pts {
            b.insert(p).unwrap();
        }
        let t = b.finish().unwrap();
        for v in 0..pts.len() {
            let mut x = b.vertex_neighbors(v);
            let mut y = t.vertex_neighbors(v);
            x.sort_unstable();
            y.sort_unstable();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn locate_examples_and_exhaustive_agreement() {
        let pts = random_points(400, 5);
        let t = delaunay(&pts).unwrap();
        for k in 0..t.triangles.len() {
            let [a, b, c] = t.triangle_points(k);
            let g = Point::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0);
            assert_eq!(t.locate(g), Some(k));
        }
        for v in 0..pts.len() {
            let lowest = (0..t.triangles.len()).find(|&k| t.triangles[k].contains(&v)).unwrap();
            assert_eq!(t.locate(pts[v]), Some(lowest));
        }
        let loc = t.locator();
        let mut rng = ChaCha20Rng::seed_from_u64(99);
        for _ in 0..10_000 {
            let q = Point::new(rng.gen_range(-0.1..1.1), rng.gen_range(-0.1..1.1));
            let expect = (0..t.triangles.len()).find(|&k| t.contains(k, q));
            assert_eq!(loc.locate(q), expect);
        }
    }
}
