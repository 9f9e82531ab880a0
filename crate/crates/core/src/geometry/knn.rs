use super::{Point, Rect};

/// Uniform-grid spatial index over a fixed site list.
#[derive(Clone, Debug)]
pub struct GridIndex {
    sites: Vec<Point>,
    bounds: Rect,
    nx: usize,
    ny: usize,
    cw: f64,
    ch: f64,
    cells: Vec<Vec<usize>>,
}

impl GridIndex {
    pub fn new(sites: &[Point]) -> Self {
        let (mut lo, mut hi) = (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in sites {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if sites.is_empty() {
            lo = Point::new(0.0, 0.0);
            hi = Point::new(1.0, 1.0);
        }
        let w = (hi.x - lo.x).max(1e-12);
        let h = (hi.y - lo.y).max(1e-12);
        let target = (sites.len() as f64 / 2.0).max(1.0);
        let nx = ((target * w / h).sqrt().ceil() as usize).clamp(1, 4096);
        let ny = ((target / nx as f64).ceil() as usize).clamp(1, 4096);
        let (cw, ch) = (w / nx as f64, h / ny as f64);
        let mut cells = vec![Vec::new(); nx * ny];
        let mut idx = GridIndex { sites: sites.to_vec(), bounds: Rect::new(lo, hi), nx, ny, cw, ch, cells: Vec::new() };
        for (i, &p) in sites.iter().enumerate() {
            let (cx, cy) = idx.cell_of(p);
            cells[cy * nx + cx].push(i);
        }
        idx.cells = cells;
        idx
    }

    pub fn sites(&self) -> &[Point] {
        &self.sites
    }

    fn cell_of(&self, p: Point) -> (usize, usize) {
        let fx = ((p.x - self.bounds.min.x) / self.cw).floor();
        let fy = ((p.y - self.bounds.min.y) / self.ch).floor();
        (
            (fx.max(0.0) as usize).min(self.nx - 1),
            (fy.max(0.0) as usize).min(self.ny - 1),
        )
    }

    /// The `k` nearest sites to `q`, nearest first; equal distances go to the lower index.
    pub fn knearest(&self, q: Point, k: usize) -> Vec<usize> {
        let k = k.min(self.sites.len());
        if k == 0 {
            return Vec::new();
        }
        let (cx, cy) = self.cell_of(q);
        let mut found: Vec<(f64, usize)> = Vec::new();
        let max_r = self.nx.max(self.ny);
        for r in 0..=max_r {
            let (x0, x1) = (cx as i64 - r as i64, cx as i64 + r as i64);
            let (y0, y1) = (cy as i64 - r as i64, cy as i64 + r as i64);
            for y in y0..=y1 {
                if y < 0 || y >= self.ny as i64 {
                    continue;
                }
                for x in x0..=x1 {
                    if x < 0 || x >= self.nx as i64 {
                        continue;
                    }
                    if y != y0 && y != y1 && x != x0 && x != x1 {
                        continue;
                    }
                    for &i in &self.cells[y as usize * self.nx + x as usize] {
                        found.push((q.dist2(self.sites[i]), i));
                    }
                }
            }
            if found.len() >= k {
                found.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                found.truncate(k);
                // anything outside the searched block is at least this far away
                let bx0 = self.bounds.min.x + x0 as f64 * self.cw;
                let bx1 = self.bounds.min.x + (x1 + 1) as f64 * self.cw;
                let by0 = self.bounds.min.y + y0 as f64 * self.ch;
                let by1 = self.bounds.min.y + (y1 + 1) as f64 * self.ch;
                let bound = (q.x - bx0).min(bx1 - q.x).min(q.y - by0).min(by1 - q.y);
                let covers_all = x0 <= 0 && y0 <= 0 && x1 >= self.nx as i64 - 1 && y1 >= self.ny as i64 - 1;
                if covers_all || (bound > 0.0 && found[k - 1].0.sqrt() < bound * (1.0 - 1e-12)) {
                    break;
                }
            }
        }
        found.into_iter().map(|(_, i)| i).collect()
    }

    /// Nearest site to `q` (lowest index among ties).
    pub fn nearest(&self, q: Point) -> usize {
        self.knearest(q, 1)[0]
    }
}

/// Exact k-nearest sites to `q`, ascending distance, ties by lower index.
pub fn knearest(sites: &[Point], q: Point, k: usize) -> Vec<usize> {
    GridIndex::new(sites).knearest(q, k)
}
