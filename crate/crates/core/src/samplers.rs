//! The six sampling strategies, each emitting an ordered point sequence in `[0, 1)²`.
//!
//! Stochastic strategies draw from `ChaCha20Rng::seed_from_u64(seed)` with one
//! stream per axis: jittered uses streams 0 (x) and 1 (y), random uses streams
//! 2 (x) and 3 (y). Each uniform is `rng.gen::<f64>()`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::cut_project::{progressive_order, qc2d, QuasiPoint, Region2D};
use crate::error::{QcError, Result};
use crate::geometry::{cell_polygon, DelaunayBuilder, Point, Rect};
use crate::golden_ring::TAU;

/// Largest `f64` below one; emitted coordinates are clamped to it.
pub const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Identifier of a sampling strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Periodic,
    Quasicrystal,
    Farthest,
    Jittered,
    Quasirandom,
    Random,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Periodic,
        Strategy::Quasicrystal,
        Strategy::Farthest,
        Strategy::Jittered,
        Strategy::Quasirandom,
        Strategy::Random,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Strategy::Periodic => "periodic",
            Strategy::Quasicrystal => "quasicrystal",
            Strategy::Farthest => "farthest",
            Strategy::Jittered => "jittered",
            Strategy::Quasirandom => "quasirandom",
            Strategy::Random => "random",
        }
    }

    /// True when the seed changes the output.
    pub fn is_stochastic(self) -> bool {
        matches!(self, Strategy::Jittered | Strategy::Random)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Strategy {
    type Err = QcError;
    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL.into_iter().find(|k| k.id() == s).ok_or_else(|| {
            let ids: Vec<&str> = Strategy::ALL.iter().map(|k| k.id()).collect();
            QcError::InvalidArgument(format!("unknown strategy '{s}' (expected one of: {})", ids.join(", ")))
        })
    }
}

/// An ordered list of sample sites in the unit square.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSequence {
    pub strategy: Strategy,
    pub seed: u64,
    pub points: Vec<Point>,
}

impl SampleSequence {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn clamp_unit(v: f64) -> f64 {
    v.clamp(0.0, BELOW_ONE)
}

fn grid_side(n: usize) -> usize {
    let mut m = (n as f64).sqrt().ceil() as usize;
    while m * m < n {
        m += 1;
    }
    while m > 1 && (m - 1) * (m - 1) >= n {
        m -= 1;
    }
    m
}

/// Cell centers of the `m × m` grid (`m = ⌈√n⌉`) in scan-line order, top row first.
pub fn periodic(n: usize) -> SampleSequence {
    let m = grid_side(n);
    let points = (0..n)
        .map(|k| {
            let (i, j) = (k % m, k / m);
            Point::new((i as f64 + 0.5) / m as f64, (j as f64 + 0.5) / m as f64)
        })
        .collect();
    SampleSequence { strategy: Strategy::Periodic, seed: 0, points }
}

fn axis_rngs(seed: u64, sx: u64, sy: u64) -> (ChaCha20Rng, ChaCha20Rng) {
    let mut rx = ChaCha20Rng::seed_from_u64(seed);
    rx.set_stream(sx);
    let mut ry = ChaCha20Rng::seed_from_u64(seed);
    ry.set_stream(sy);
    (rx, ry)
}

/// One uniformly displaced point per grid cell, scan-line order.
pub fn jittered(n: usize, seed: u64) -> SampleSequence {
    let m = grid_side(n);
    let (mut rx, mut ry) = axis_rngs(seed, 0, 1);
    let points = (0..n)
        .map(|k| {
            let (i, j) = ((k % m) as f64, (k / m) as f64);
            let (u, v): (f64, f64) = (rx.gen(), ry.gen());
            // keep the point inside its own cell despite rounding
            let x = ((i + u) / m as f64).min(prev_float((i + 1.0) / m as f64));
            let y = ((j + v) / m as f64).min(prev_float((j + 1.0) / m as f64));
            Point::new(clamp_unit(x), clamp_unit(y))
        })
        .collect();
    SampleSequence { strategy: Strategy::Jittered, seed, points }
}

fn prev_float(v: f64) -> f64 {
    if v > 0.0 {
        f64::from_bits(v.to_bits() - 1)
    } else {
        v
    }
}

/// Radical inverse of `i` in base `b`.
pub fn radical_inverse(mut i: u64, b: u64) -> f64 {
    let inv = 1.0 / b as f64;
    let (mut f, mut r) = (inv, 0.0);
    while i > 0 {
        r += f * (i % b) as f64;
        i /= b;
        f *= inv;
    }
    r
}

/// Halton points for indices `1..=n` in bases 2 and 3.
pub fn halton(n: usize) -> SampleSequence {
    let points = (1..=n as u64).map(|i| Point::new(radical_inverse(i, 2), radical_inverse(i, 3))).collect();
    SampleSequence { strategy: Strategy::Quasirandom, seed: 0, points }
}

/// Independent uniform points in draw order.
pub fn random_uniform(n: usize, seed: u64) -> SampleSequence {
    let (mut rx, mut ry) = axis_rngs(seed, 2, 3);
    let points = (0..n).map(|_| Point::new(rx.gen(), ry.gen())).collect();
    SampleSequence { strategy: Strategy::Random, seed, points }
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    score: f64,
    p: Point,
    site: usize,
    version: u32,
}

impl PartialEq for Candidate {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Candidate {}
impl PartialOrd for Candidate {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Candidate {
    // larger score first, then the lexicographically smaller point
    fn cmp(&self, o: &Self) -> Ordering {
        self.score
            .total_cmp(&o.score)
            .then_with(|| o.p.cmp_lex(&self.p))
            .then_with(|| o.site.cmp(&self.site))
            .then_with(|| self.version.cmp(&o.version))
    }
}

/// Farthest-point sampling: start at the center, then repeatedly take the
/// point of the square farthest from all sites. That point is a vertex of a
/// clipped Voronoi cell, so only cell vertices are scored. Ties go to the
/// lexicographically smallest `(x, y)`.
///
/// The seed is recorded but does not affect the output.
pub fn farthest_point(n: usize, seed: u64) -> SampleSequence {
    let mut sites: Vec<Point> = Vec::with_capacity(n);
    if n > 0 {
        sites.push(Point::new(0.5, 0.5));
    }
    let clip = Rect::UNIT;
    let mut builder = DelaunayBuilder::new();
    let mut versions: Vec<u32> = Vec::new();
    let mut heap: BinaryHeap<Candidate> = BinaryHeap::new();

    let push_cell = |s: usize, others: &[Point], sites: &[Point], versions: &mut Vec<u32>, heap: &mut BinaryHeap<Candidate>| {
        versions[s] += 1;
        for (p, _) in cell_polygon(sites[s], others, &clip) {
            heap.push(Candidate { score: p.dist(sites[s]), p, site: s, version: versions[s] });
        }
    };

    if n > 0 {
        builder.insert(sites[0]).expect("first site");
        versions.push(0);
        push_cell(0, &[], &sites, &mut versions, &mut heap);
    }
    while sites.len() < n {
        let Some(best) = heap.pop() else { break };
        if best.version != versions[best.site] {
            continue;
        }
        let started_before = builder.is_triangulated();
        if builder.insert(best.p).is_err() {
            // the square is saturated at this resolution
            break;
        }
        sites.push(best.p);
        versions.push(0);
        let s = sites.len() - 1;
        // until the sites stop being collinear every cell is rebuilt from all pairs;
        // afterwards only the new site and its Delaunay neighbours change
        let targets: Vec<usize> = if started_before {
            let mut v = builder.vertex_neighbors(s);
            v.push(s);
            v
        } else {
            (0..sites.len()).collect()
        };
        for t in targets {
            let others: Vec<Point> = if builder.is_triangulated() {
                builder.vertex_neighbors(t).into_iter().map(|w| sites[w]).collect()
            } else {
                (0..sites.len()).filter(|&w| w != t).map(|w| sites[w]).collect()
            };
            push_cell(t, &others, &sites, &mut versions, &mut heap);
        }
    }
    let points = sites.into_iter().map(|p| Point::new(clamp_unit(p.x), clamp_unit(p.y))).collect();
    SampleSequence { strategy: Strategy::Farthest, seed, points }
}

/// Acceptance window shape for the quasicrystal sampler.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcceptShape {
    Decagon,
    Disk,
}

/// Windows used by the quasicrystal sampler.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuasicrystalConfig {
    pub shape: AcceptShape,
    /// Starting circumradius of the acceptance window; grown by τ until enough points exist.
    pub initial_radius: f64,
    pub boundary_closed: bool,
    /// Decagon rotation in radians.
    pub rotation: f64,
    /// Half-extent of the square viewing window.
    pub view_half_extent: f64,
    /// Move the viewing window to center `(2h, 2h)` so it excludes the origin.
    pub off_origin: bool,
}

impl Default for QuasicrystalConfig {
    fn default() -> Self {
        QuasicrystalConfig {
            shape: AcceptShape::Decagon,
            initial_radius: TAU.powi(5) + TAU.powi(3),
            boundary_closed: true,
            rotation: 0.0,
            view_half_extent: 1.0,
            off_origin: false,
        }
    }
}

impl QuasicrystalConfig {
    pub fn accept(&self, radius: f64) -> Region2D {
        let r = match self.shape {
            AcceptShape::Decagon => Region2D::decagon(radius).with_rotation(self.rotation),
            AcceptShape::Disk => Region2D::disk(radius),
        };
        r.with_closed(self.boundary_closed)
    }

    pub fn view(&self) -> Region2D {
        let h = self.view_half_extent;
        let c = if self.off_origin { Point::new(2.0 * h, 2.0 * h) } else { Point::new(0.0, 0.0) };
        Region2D::rectangle(c, h, h)
    }
}

/// The first `n` quasicrystal points in progressive order, in view-window coordinates.
pub fn quasicrystal_points(n: usize, cfg: &QuasicrystalConfig) -> Result<Vec<QuasiPoint>> {
    if !(cfg.initial_radius > 0.0 && cfg.view_half_extent > 0.0) {
        return Err(QcError::InvalidArgument("window sizes must be positive".into()));
    }
    let view = cfg.view();
    let mut radius = cfg.initial_radius;
    loop {
        let accept = cfg.accept(radius);
        let pts = qc2d(&accept, &view)?;
        if pts.len() >= n {
            let mut ordered = progressive_order(pts, &accept);
            ordered.truncate(n);
            return Ok(ordered);
        }
        radius *= TAU;
    }
}

/// Quasicrystal samples mapped affinely from the viewing window onto `[0, 1)²`.
pub fn quasicrystal(n: usize, cfg: &QuasicrystalConfig) -> Result<SampleSequence> {
    let pts = quasicrystal_points(n, cfg)?;
    let b = cfg.view().bbox();
    let points = pts
        .iter()
        .map(|q| {
            let p = q.position;
            Point::new(clamp_unit((p.x - b.min.x) / b.width()), clamp_unit((p.y - b.min.y) / b.height()))
        })
        .collect();
    Ok(SampleSequence { strategy: Strategy::Quasicrystal, seed: 0, points })
}

/// Generates `n ≥ 1` samples with the given strategy.
pub fn generate(strategy: Strategy, n: usize, seed: u64, cfg: &QuasicrystalConfig) -> Result<SampleSequence> {
    if n == 0 {
        return Err(QcError::InvalidArgument("sample count must be at least 1".into()));
    }
    Ok(match strategy {
        Strategy::Periodic => periodic(n),
        Strategy::Quasicrystal => quasicrystal(n, cfg)?,
        Strategy::Farthest => farthest_point(n, seed),
        Strategy::Jittered => jittered(n, seed),
        Strategy::Quasirandom => halton(n),
        Strategy::Random => random_uniform(n, seed),
    })
}
