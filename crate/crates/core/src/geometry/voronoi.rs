use std::cmp::Ordering;
use std::collections::HashMap;

use super::clip::{clip_polygon, polygon_area, HalfPlane};
use super::predicates::orient2d;
use super::{delaunay, Point, Rect, Triangulation};
use crate::error::Result;

const MERGE_TOL: f64 = 1e-9;

/// One clipped Voronoi cell.
#[derive(Clone, Debug, Default)]
pub struct VoronoiCell {
    pub site: usize,
    /// Counter-clockwise polygon; empty when the site lies outside the clip rectangle.
    pub polygon: Vec<Point>,
    /// Indices into [`VoronoiDiagram::vertices`], parallel to `polygon`.
    pub vertex_ids: Vec<usize>,
    /// Sites across the cell's edges of positive length.
    pub neighbors: Vec<usize>,
}

impl VoronoiCell {
    pub fn area(&self) -> f64 {
        polygon_area(&self.polygon)
    }
}

/// Voronoi cells of a site set clipped to a rectangle.
#[derive(Clone, Debug)]
pub struct VoronoiDiagram {
    pub sites: Vec<Point>,
    pub clip: Rect,
    pub cells: Vec<VoronoiCell>,
    /// Cell vertices shared between cells (merged within a small tolerance).
    pub vertices: Vec<Point>,
}

/// The cell of `site` cut by the bisectors against `others`, clipped to `clip`.
///
/// Each entry of the result pairs a vertex with the label of the edge leaving
/// it: `Some(j)` for the bisector with `others[j]`, `None` for the clip boundary.
pub fn cell_polygon(site: Point, others: &[Point], clip: &Rect) -> Vec<(Point, Option<usize>)> {
    let mut poly: Vec<(Point, Option<usize>)> = clip.corners().into_iter().map(|p| (p, None)).collect();
    for (j, &o) in others.iter().enumerate() {
        if poly.is_empty() {
            break;
        }
        poly = clip_polygon(&poly, &HalfPlane::bisector(site, o, Some(j)));
    }
    poly
}

/// A clipped cell polygon with edge labels, and the neighbour ids the labels refer to.
type LabeledCell = (Vec<(Point, Option<usize>)>, Vec<usize>);

impl VoronoiDiagram {
    /// Cells from the Delaunay neighbourhoods of `t`.
    pub fn from_triangulation(t: &Triangulation, clip: Rect) -> Self {
        let polys: Vec<LabeledCell> = (0..t.vertices.len())
            .map(|s| {
                let nbrs = t.vertex_neighbors(s);
                let pts: Vec<Point> = nbrs.iter().map(|&w| t.vertices[w]).collect();
                (cell_polygon(t.vertices[s], &pts, &clip), nbrs)
            })
            .collect();
        Self::assemble(t.vertices.clone(), clip, polys)
    }

    /// Builds the diagram directly from sites. Small or collinear site sets
    /// (which have no triangulation) use every other site as a potential neighbour.
    pub fn from_sites(sites: &[Point], clip: Rect) -> Result<Self> {
        let collinear = sites.len() < 3
            || sites.iter().skip(2).all(|&p| orient2d(sites[0], sites[1], p) == Ordering::Equal);
        if !collinear {
            return Ok(Self::from_triangulation(&delaunay(sites)?, clip));
        }
        let polys = (0..sites.len())
            .map(|s| {
                let nbrs: Vec<usize> = (0..sites.len()).filter(|&w| w != s).collect();
                let pts: Vec<Point> = nbrs.iter().map(|&w| sites[w]).collect();
                (cell_polygon(sites[s], &pts, &clip), nbrs)
            })
            .collect();
        Ok(Self::assemble(sites.to_vec(), clip, polys))
    }

    fn assemble(sites: Vec<Point>, clip: Rect, polys: Vec<LabeledCell>) -> Self {
        let mut vertices: Vec<Point> = Vec::new();
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let mut intern = |p: Point| -> usize {
            let kx = (p.x / MERGE_TOL).round() as i64;
            let ky = (p.y / MERGE_TOL).round() as i64;
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(ids) = buckets.get(&(kx + dx, ky + dy)) {
                        for &i in ids {
                            if vertices[i].dist(p) <= MERGE_TOL {
                                return i;
                            }
                        }
                    }
                }
            }
            vertices.push(p);
            buckets.entry((kx, ky)).or_default().push(vertices.len() - 1);
            vertices.len() - 1
        };
        let mut cells = Vec::with_capacity(polys.len());
        for (s, (poly, nbrs)) in polys.into_iter().enumerate() {
            let n = poly.len();
            let mut neighbors = Vec::new();
            for i in 0..n {
                if let Some(j) = poly[i].1 {
                    if poly[i].0.dist(poly[(i + 1) % n].0) > MERGE_TOL && !neighbors.contains(&nbrs[j]) {
                        neighbors.push(nbrs[j]);
                    }
                }
            }
            let polygon: Vec<Point> = poly.iter().map(|x| x.0).collect();
            let vertex_ids = polygon.iter().map(|&p| intern(p)).collect();
            cells.push(VoronoiCell { site: s, polygon, vertex_ids, neighbors });
        }
        VoronoiDiagram { sites, clip, cells, vertices }
    }

    pub fn total_area(&self) -> f64 {
        self.cells.iter().map(|c| c.area()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn grid_of_four_gives_equal_squares() {
        let sites = [Point::new(0.25, 0.25), Point::new(0.75, 0.25), Point::new(0.25, 0.75), Point::new(0.75, 0.75)];
        let v = VoronoiDiagram::from_sites(&sites, Rect::UNIT).unwrap();
        for c in &v.cells {
            assert!((c.area() - 0.25).abs() < 1e-15);
            assert_eq!(c.polygon.len(), 4);
        }
        assert_eq!(v.vertices.len(), 9);
    }

    #[test]
    fn single_triangle_cells_meet_at_circumcenter() {
        let sites = [Point::new(0.2, 0.2), Point::new(0.8, 0.3), Point::new(0.4, 0.9)];
        let v = VoronoiDiagram::from_sites(&sites, Rect::new(Point::new(-5., -5.), Point::new(5., 5.))).unwrap();
        let (a, b, c) = (sites[0], sites[1], sites[2]);
        let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        let ux = (a.norm2() * (b.y - c.y) + b.norm2() * (c.y - a.y) + c.norm2() * (a.y - b.y)) / d;
        let uy = (a.norm2() * (c.x - b.x) + b.norm2() * (a.x - c.x) + c.norm2() * (b.x - a.x)) / d;
        let cc = Point::new(ux, uy);
        let shared: Vec<usize> = v.cells[0]
            .vertex_ids
            .iter()
            .copied()
            .filter(|i| v.cells[1].vertex_ids.contains(i) && v.cells[2].vertex_ids.contains(i))
            .collect();
        assert_eq!(shared.len(), 1);
        assert!(v.vertices[shared[0]].dist(cc) < 1e-12);
    }

    #[test]
    fn cells_tile_the_square_and_contain_their_sites() {
        let mut rng = ChaCha20Rng::seed_from_u64(21);
        let sites: Vec<Point> = (0..1000).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        let v = VoronoiDiagram::from_sites(&sites, Rect::UNIT).unwrap();
        assert!((v.total_area() - 1.0).abs() < 1e-6);
        for c in &v.cells {
            let p = sites[c.site];
            let n = c.polygon.len();
            for i in 0..n {
                assert_ne!(orient2d(c.polygon[i], c.polygon[(i + 1) % n], p), Ordering::Less);
            }
        }
    }

    #[test]
    fn voronoi_delaunay_duality() {
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let sites: Vec<Point> = (0..400).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        let t = delaunay(&sites).unwrap();
        // a large clip box keeps every finite Voronoi edge
        let v = VoronoiDiagram::from_triangulation(&t, Rect::new(Point::new(-1e4, -1e4), Point::new(1e4, 1e4)));
        let mut vor_edges: Vec<(usize, usize)> = v
            .cells
            .iter()
            .flat_map(|c| c.neighbors.iter().map(move |&w| (c.site.min(w), c.site.max(w))))
            .collect();
        vor_edges.sort_unstable();
        vor_edges.dedup();
        assert_eq!(vor_edges, t.edges());
    }

    #[test]
    fn collinear_sites_fall_back_to_all_pairs() {
        let sites = [Point::new(0.5, 0.5), Point::new(0.0, 0.0), Point::new(1.0, 1.0)];
        let v = VoronoiDiagram::from_sites(&sites, Rect::UNIT).unwrap();
        assert!((v.total_area() - 1.0).abs() < 1e-12);
        let one = VoronoiDiagram::from_sites(&sites[..1], Rect::UNIT).unwrap();
        assert!((one.cells[0].area() - 1.0).abs() < 1e-15);
    }
}
