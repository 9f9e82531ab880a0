//! Non-photorealistic renderings of sampled images: mosaic, paint strokes,
//! Voronoi cells and point plots.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{QcError, Result};
use crate::geometry::predicates::orient2d;
use crate::geometry::{delaunay, GridIndex, Point, Triangulation, VoronoiDiagram};
use crate::raster::{pixel_center, quantize, RasterImage, Rgb};
use crate::reconstruct::SampledImage;

/// Rendering style identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Mosaic,
    Paint,
    Voronoi,
    Points,
}

impl Style {
    pub const ALL: [Style; 4] = [Style::Mosaic, Style::Paint, Style::Voronoi, Style::Points];

    pub fn id(self) -> &'static str {
        match self {
            Style::Mosaic => "mosaic",
            Style::Paint => "paint",
            Style::Voronoi => "voronoi",
            Style::Points => "points",
        }
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Style {
    type Err = QcError;
    fn from_str(s: &str) -> Result<Self> {
        Style::ALL.into_iter().find(|k| k.id() == s).ok_or_else(|| {
            QcError::InvalidArgument(format!("unknown style '{s}' (expected one of: mosaic, paint, voronoi, points)"))
        })
    }
}

/// Colors and sizes shared by the rendering styles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StyleConfig {
    pub grout_color: Rgb,
    pub edge_color: Rgb,
    pub background: Rgb,
    /// Disc radius of point plots, in pixels.
    pub point_radius: f64,
    /// Color of the first point of a sequence.
    pub ramp_start: Rgb,
    /// Color of the last point of a sequence.
    pub ramp_end: Rgb,
    /// Number of midpoint subdivisions applied by paint strokes.
    pub paint_depth: u32,
}

impl Default for StyleConfig {
    fn default() -> Self {
        StyleConfig {
            grout_color: [0, 0, 0],
            edge_color: [0, 0, 0],
            background: [255, 255, 255],
            point_radius: 2.5,
            ramp_start: [0, 0, 96],
            ramp_end: [160, 255, 160],
            paint_depth: 1,
        }
    }
}

/// Fill rule tie-break: an edge owns the pixel centers lying exactly on it
/// when it points "down" in raster order, or is horizontal and points left.
fn owns_edge(a: Point, b: Point) -> bool {
    let d = b - a;
    d.y > 0.0 || (d.y == 0.0 && d.x < 0.0)
}

/// Calls `shade(px, py, q)` for every pixel whose center `q` (unit coordinates)
/// is covered by the triangle `tri`, given in unit coordinates.
///
/// Coverage is decided with exact orientation tests in pixel space, so
/// triangles sharing edges cover every pixel exactly once.
pub fn rasterize_triangle(tri: [Point; 3], width: u32, height: u32, mut shade: impl FnMut(u32, u32, Point)) {
    let scale = |p: Point| Point::new(p.x * width as f64, p.y * height as f64);
    let mut v = tri.map(scale);
    match orient2d(v[0], v[1], v[2]) {
        Ordering::Equal => return,
        Ordering::Less => v.swap(1, 2),
        Ordering::Greater => {}
    }
    let min_x = v.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let max_x = v.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let min_y = v.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let max_y = v.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    let x0 = (min_x - 0.5).floor().max(0.0) as i64;
    let x1 = ((max_x - 0.5).ceil() as i64).min(width as i64 - 1);
    let y0 = (min_y - 0.5).floor().max(0.0) as i64;
    let y1 = ((max_y - 0.5).ceil() as i64).min(height as i64 - 1);
    let owns = [owns_edge(v[0], v[1]), owns_edge(v[1], v[2]), owns_edge(v[2], v[0])];
    for py in y0..=y1 {
        for px in x0..=x1 {
            let c = Point::new(px as f64 + 0.5, py as f64 + 0.5);
            let inside = (0..3).all(|k| match orient2d(v[k], v[(k + 1) % 3], c) {
                Ordering::Greater => true,
                Ordering::Equal => owns[k],
                Ordering::Less => false,
            });
            if inside {
                shade(px as u32, py as u32, pixel_center(px as u32, py as u32, width, height));
            }
        }
    }
}

/// Fill of one mosaic tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TileFill {
    /// Color of this triangulation vertex.
    Vertex(usize),
    Grout,
}

/// One of the four sub-triangles a Delaunay triangle is split into.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MosaicTile {
    pub corners: [Point; 3],
    pub fill: TileFill,
}

/// Splits every triangle at its edge midpoints into three corner tiles and one medial grout tile.
pub fn mosaic_tiles(tri: &Triangulation) -> Vec<MosaicTile> {
    let mut out = Vec::with_capacity(4 * tri.triangles.len());
    for (t, v) in tri.triangles.iter().enumerate() {
        let [a, b, c] = tri.triangle_points(t);
        let (mab, mbc, mca) = (a.midpoint(b), b.midpoint(c), c.midpoint(a));
        out.push(MosaicTile { corners: [a, mab, mca], fill: TileFill::Vertex(v[0]) });
        out.push(MosaicTile { corners: [b, mbc, mab], fill: TileFill::Vertex(v[1]) });
        out.push(MosaicTile { corners: [c, mca, mbc], fill: TileFill::Vertex(v[2]) });
        out.push(MosaicTile { corners: [mab, mbc, mca], fill: TileFill::Grout });
    }
    out
}

/// Mosaic rendering: corner tiles carry their vertex's sampled color, the
/// medial tile is grout. Pixels outside the hull keep the background.
pub fn mosaic(s: &SampledImage, width: u32, height: u32, cfg: &StyleConfig) -> Result<RasterImage> {
    let tri = delaunay(&s.sites)?;
    let mut img = RasterImage::new(width, height, cfg.background);
    for tile in mosaic_tiles(&tri) {
        let color = match tile.fill {
            TileFill::Vertex(v) => s.colors[v],
            TileFill::Grout => cfg.grout_color,
        };
        rasterize_triangle(tile.corners, width, height, |x, y, _| img.set(x, y, color));
    }
    Ok(img)
}

fn smoothstep(w: f64) -> f64 {
    let w = w.clamp(0.0, 1.0);
    w * w * (3.0 - 2.0 * w)
}

type ColorF = [f64; 3];

fn subdivide(tri: [(Point, ColorF); 3], depth: u32, out: &mut Vec<[(Point, ColorF); 3]>) {
    if depth == 0 {
        out.push(tri);
        return;
    }
    let mid = |a: (Point, ColorF), b: (Point, ColorF)| {
        (a.0.midpoint(b.0), std::array::from_fn(|c| 0.5 * (a.1[c] + b.1[c])))
    };
    let [a, b, c] = tri;
    let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
    for t in [[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]] {
        subdivide(t, depth - 1, out);
    }
}

/// Paint strokes: each Delaunay triangle is subdivided at edge midpoints
/// (`paint_depth` times, midpoint colors averaged), then every sub-triangle
/// blends its corner colors with smoothstep-sharpened barycentric weights.
/// Pixels outside the hull take the nearest site's color.
pub fn paint_strokes(s: &SampledImage, width: u32, height: u32, cfg: &StyleConfig) -> Result<RasterImage> {
    let tri = delaunay(&s.sites)?;
    let index = GridIndex::new(&s.sites);
    let mut img = RasterImage::from_fn(width, height, |x, y| s.colors[index.nearest(pixel_center(x, y, width, height))]);
    let to_f = |c: Rgb| c.map(|v| v as f64);
    let mut leaves = Vec::new();
    for (t, v) in tri.triangles.iter().enumerate() {
        let p = tri.triangle_points(t);
        let root = [(p[0], to_f(s.colors[v[0]])), (p[1], to_f(s.colors[v[1]])), (p[2], to_f(s.colors[v[2]]))];
        subdivide(root, cfg.paint_depth, &mut leaves);
    }
    for leaf in leaves {
        let [(a, ca), (b, cb), (c, cc)] = leaf;
        let d = (b - a).cross(c - a);
        rasterize_triangle([a, b, c], width, height, |x, y, q| {
            let wa = (b - q).cross(c - q) / d;
            let wb = (c - q).cross(a - q) / d;
            let w = [smoothstep(wa), smoothstep(wb), smoothstep(1.0 - wa - wb)];
            let total = w[0] + w[1] + w[2];
            let color = std::array::from_fn(|k| quantize((w[0] * ca[k] + w[1] * cb[k] + w[2] * cc[k]) / total));
            img.set(x, y, color);
        });
    }
    Ok(img)
}

/// Voronoi plot: each pixel takes its nearest site's color; pixels within half
/// a pixel of the bisector with the second-nearest site use `edge_color`.
/// Pixels outside the diagram's clip rectangle keep the background.
pub fn draw_voronoi(v: &VoronoiDiagram, colors: &[Rgb], width: u32, height: u32, cfg: &StyleConfig) -> Result<RasterImage> {
    if colors.len() != v.sites.len() {
        return Err(QcError::InvalidArgument(format!("{} colors for {} sites", colors.len(), v.sites.len())));
    }
    if v.sites.is_empty() {
        return Ok(RasterImage::new(width, height, cfg.background));
    }
    let index = GridIndex::new(&v.sites);
    let half_px = 0.5 * (1.0 / width as f64).max(1.0 / height as f64);
    Ok(RasterImage::from_fn(width, height, |x, y| {
        let q = pixel_center(x, y, width, height);
        if !v.clip.contains(q) {
            return cfg.background;
        }
        let near = index.knearest(q, 2);
        if near.len() == 2 {
            let (s1, s2) = (v.sites[near[0]], v.sites[near[1]]);
            let gap = (q.dist2(s2) - q.dist2(s1)) / (2.0 * s1.dist(s2));
            if gap <= half_px {
                return cfg.edge_color;
            }
        }
        colors[near[0]]
    }))
}

/// Point plot of a sequence: discs colored from `ramp_start` to `ramp_end` by rank; later points on top.
pub fn draw_points(points: &[Point], width: u32, height: u32, cfg: &StyleConfig) -> Result<RasterImage> {
    if points.is_empty() {
        return Err(QcError::InvalidArgument("no points to draw".into()));
    }
    let mut img = RasterImage::new(width, height, cfg.background);
    let n = points.len();
    let r = cfg.point_radius;
    for (k, p) in points.iter().enumerate() {
        let t = if n > 1 { k as f64 / (n - 1) as f64 } else { 0.0 };
        let color: Rgb = std::array::from_fn(|c| {
            let (a, b) = (cfg.ramp_start[c] as f64, cfg.ramp_end[c] as f64);
            quantize(a + t * (b - a))
        });
        let (cx, cy) = (p.x * width as f64, p.y * height as f64);
        let x0 = (cx - r - 0.5).floor().max(0.0) as i64;
        let x1 = ((cx + r - 0.5).ceil() as i64).min(width as i64 - 1);
        let y0 = (cy - r - 0.5).floor().max(0.0) as i64;
        let y1 = ((cy + r - 0.5).ceil() as i64).min(height as i64 - 1);
        for py in y0..=y1 {
            for px in x0..=x1 {
                let (dx, dy) = (px as f64 + 0.5 - cx, py as f64 + 0.5 - cy);
                if dx * dx + dy * dy <= r * r {
                    img.set(px as u32, py as u32, color);
                }
            }
        }
    }
    Ok(img)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{polygon_area, Rect};
    use crate::samplers::random_uniform;

    fn tri_area(p: [Point; 3]) -> f64 {
        polygon_area(&p).abs()
    }

    #[test]
    fn fill_rule_covers_each_pixel_once() {
        // a fan of triangles around an interior point sharing edges through pixel centers
        let c = Point::new(0.5, 0.5);
        let ring = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
        let mut count = vec![0u32; 16 * 16];
        for k in 0..4 {
            rasterize_triangle([c, ring[k], ring[(k + 1) % 4]], 16, 16, |x, y, _| count[(y * 16 + x) as usize] += 1);
        }
        assert!(count.iter().all(|&n| n == 1));
    }

    #[test]
    fn mosaic_tiles_partition_area() {
        let pts = random_uniform(100, 4).points;
        let tri = delaunay(&pts).unwrap();
        let tiles = mosaic_tiles(&tri);
        assert_eq!(tiles.len(), 4 * tri.triangles.len());
        let total: f64 = tiles.iter().map(|t| tri_area(t.corners)).sum();
        let hull: f64 = (0..tri.triangles.len()).map(|t| tri.area(t)).sum();
        assert!((total - hull).abs() < 1e-9);
        for (t, chunk) in tiles.chunks(4).enumerate() {
            assert!((tri_area(chunk[3].corners) - 0.25 * tri.area(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn mosaic_colors_come_from_sites_or_grout() {
        let pts = random_uniform(60, 2).points;
        let colors: Vec<Rgb> = (0..60).map(|i| [i as u8 * 4, 255 - i as u8, 7]).collect();
        let s = SampledImage::new(pts, colors.clone()).unwrap();
        let cfg = StyleConfig { background: [1, 1, 1], grout_color: [0, 0, 0], ..Default::default() };
        let img = mosaic(&s, 128, 128, &cfg).unwrap();
        assert!(img.pixels.iter().all(|p| *p == [0, 0, 0] || *p == [1, 1, 1] || colors.contains(p)));
        assert_eq!(img, mosaic(&s, 128, 128, &cfg).unwrap());
    }

    #[test]
    fn paint_constant_and_vertex_exact() {
        let sites = vec![Point::new(0.0625, 0.0625), Point::new(0.9375, 0.0625), Point::new(0.5625, 0.9375), Point::new(0.4375, 0.4375)];
        let s = SampledImage::new(sites.clone(), vec![[40, 80, 120]; 4]).unwrap();
        let img = paint_strokes(&s, 8, 8, &StyleConfig::default()).unwrap();
        assert!(img.pixels.iter().all(|&p| p == [40, 80, 120]));
        let s = SampledImage::new(sites, vec![[255, 0, 0], [0, 255, 0], [0, 0, 255], [9, 9, 9]]).unwrap();
        for depth in [1, 2] {
            let img = paint_strokes(&s, 8, 8, &StyleConfig { paint_depth: depth, ..Default::default() }).unwrap();
            assert_eq!(img.get(0, 0), [255, 0, 0]);
            assert_eq!(img.get(7, 0), [0, 255, 0]);
            assert_eq!(img.get(3, 3), [9, 9, 9]);
        }
    }

    #[test]
    fn smoothstep_is_symmetric() {
        assert_eq!(smoothstep(0.5), 0.5);
        assert_eq!(smoothstep(0.0), 0.0);
        assert_eq!(smoothstep(1.0), 1.0);
        assert!((smoothstep(0.25) + smoothstep(0.75) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn voronoi_plot_quadrants() {
        let sites = vec![Point::new(0.25, 0.25), Point::new(0.75, 0.25), Point::new(0.25, 0.75), Point::new(0.75, 0.75)];
        let v = VoronoiDiagram::from_sites(&sites, Rect::UNIT).unwrap();
        let colors = vec![[255, 0, 0], [0, 255, 0], [0, 0, 255], [255, 255, 0]];
        let cfg = StyleConfig { edge_color: [0, 0, 0], ..Default::default() };
        let img = draw_voronoi(&v, &colors, 9, 9, &cfg).unwrap();
        for y in 0..9 {
            for x in 0..9 {
                let want = if x == 4 || y == 4 { [0, 0, 0] } else { colors[(y / 5 * 2 + x / 5) as usize] };
                assert_eq!(img.get(x, y), want, "({x},{y})");
            }
        }
        let one = VoronoiDiagram::from_sites(&sites[..1], Rect::UNIT).unwrap();
        let img = draw_voronoi(&one, &colors[..1], 5, 5, &cfg).unwrap();
        assert!(img.pixels.iter().all(|&p| p == [255, 0, 0]));
    }

    #[test]
    fn point_ramp_endpoints() {
        let cfg = StyleConfig::default();
        let img = draw_points(&[Point::new(0.5, 0.5)], 32, 32, &cfg).unwrap();
        assert_eq!(img.get(16, 16), [0, 0, 96]);
        let img = draw_points(&[Point::new(0.25, 0.5), Point::new(0.75, 0.5)], 32, 32, &cfg).unwrap();
        assert_eq!(img.get(8, 16), [0, 0, 96]);
        assert_eq!(img.get(24, 16), [160, 255, 160]);
        assert_eq!(img.get(0, 0), cfg.background);
    }
}
