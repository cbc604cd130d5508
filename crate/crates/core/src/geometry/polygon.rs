use super::{Vec2, Vec3};
use crate::error::{Error, Result};

/// Indices of the strictly convex hull of `points`, counterclockwise, starting at the
/// lowest-leftmost point. Collinear and repeated points are dropped.
pub fn convex_hull_2d(points: &[Vec2]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a]
            .x
            .total_cmp(&points[b].x)
            .then(points[a].y.total_cmp(&points[b].y))
    });
    idx.dedup_by(|a, b| (points[*a] - points[*b]).norm() <= 1e-14);
    if idx.len() < 3 {
        return idx;
    }
    let scale = idx
        .iter()
        .map(|&i| (points[i] - points[idx[0]]).norm())
        .fold(0.0, f64::max);
    let tol = 1e-13 * scale * scale;
    let cross = |o: usize, a: usize, b: usize| {
        let (o, a, b) = (points[o], points[a], points[b]);
        (a - o).perp(&(b - o))
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= tol {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= tol {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Signed area of a closed polygon (positive when counterclockwise).
pub(crate) fn signed_area(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| vertices[i].perp(&vertices[(i + 1) % n]))
        .sum::<f64>()
        * 0.5
}

/// Convex polygon lying in a plane through the origin of R³.
///
/// Coordinates are taken in the orthonormal frame `(u1, u2)`; vertices are
/// counterclockwise in that frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon2 {
    frame: (Vec3, Vec3),
    vertices: Vec<Vec2>,
}

impl Polygon2 {
    /// Validates convexity and orientation of an explicit vertex cycle.
    pub fn new(frame: (Vec3, Vec3), vertices: Vec<Vec2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::DegenerateInput("polygon needs 3 vertices".into()));
        }
        if signed_area(&vertices) <= 0.0 {
            return Err(Error::DegenerateInput("polygon is not counterclockwise".into()));
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if (b - a).perp(&(c - b)) < -1e-12 {
                return Err(Error::DegenerateInput("polygon is not convex".into()));
            }
        }
        Ok(Polygon2 { frame, vertices })
    }

    /// Convex hull of planar points in the given frame.
    pub fn hull(frame: (Vec3, Vec3), points: &[Vec2]) -> Result<Self> {
        let ring = convex_hull_2d(points);
        if ring.len() < 3 {
            return Err(Error::DegenerateInput("points do not span the plane".into()));
        }
        Polygon2::new(frame, ring.into_iter().map(|i| points[i]).collect())
    }

    /// Polygon in the xy-plane frame.
    pub fn planar(points: &[Vec2]) -> Result<Self> {
        Polygon2::hull((Vec3::x(), Vec3::y()), points)
    }

    /// Regular `l`-gon with the given circumradius, first vertex at angle `phase`.
    pub fn regular(l: usize, circumradius: f64, phase: f64) -> Result<Self> {
        if l < 3 {
            return Err(Error::BadOrder(format!("regular polygon needs l >= 3, got {l}")));
        }
        let step = std::f64::consts::TAU / l as f64;
        let pts: Vec<Vec2> = (0..l)
            .map(|k| {
                let t = phase + step * k as f64;
                Vec2::new(circumradius * t.cos(), circumradius * t.sin())
            })
            .collect();
        Polygon2::new((Vec3::x(), Vec3::y()), pts)
    }

    pub fn frame(&self) -> (Vec3, Vec3) {
        self.frame
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Embeds frame coordinates into R³.
    pub fn lift(&self, p: &Vec2) -> Vec3 {
        self.frame.0 * p.x + self.frame.1 * p.y
    }

    /// Frame coordinates of the orthogonal projection of `x` onto the plane.
    pub fn project(&self, x: &Vec3) -> Vec2 {
        Vec2::new(x.dot(&self.frame.0), x.dot(&self.frame.1))
    }

    /// Outward unit normal and offset of edge `i` (from vertex `i` to `i + 1`).
    pub fn edge(&self, i: usize) -> (Vec2, f64) {
        let a = self.vertices[i];
        let b = self.vertices[(i + 1) % self.len()];
        let d = b - a;
        let n = Vec2::new(d.y, -d.x).normalize();
        (n, n.dot(&a))
    }

    /// Smallest slack `offset - n·p` over all edges.
    pub fn min_slack(&self, p: &Vec2) -> f64 {
        (0..self.len())
            .map(|i| {
                let (n, c) = self.edge(i);
                c - n.dot(p)
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, p: &Vec2, tol: f64) -> bool {
        self.min_slack(p) >= -tol
    }

    /// Minkowski gauge; requires the origin in the interior.
    pub fn gauge(&self, p: &Vec2) -> Result<f64> {
        let mut g = f64::NEG_INFINITY;
        for i in 0..self.len() {
            let (n, c) = self.edge(i);
            if c <= 0.0 {
                return Err(Error::OriginNotInterior);
            }
            g = g.max(n.dot(p) / c);
        }
        Ok(g.max(0.0))
    }

    /// Boundary point in direction `d`.
    pub fn radial_point(&self, d: &Vec2) -> Result<Vec2> {
        if d.norm() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(d / self.gauge(d)?)
    }

    /// Polar body `(self − z)°` in the same frame.
    pub fn polar(&self, z: &Vec2) -> Result<Polygon2> {
        let slack = self.min_slack(z);
        if slack <= 1e-12 {
            return Err(Error::PointNotInterior { slack });
        }
        let mut duals: Vec<Vec2> = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let (n, c) = self.edge(i);
            let d = n / (c - n.dot(z));
            if duals.last().map_or(true, |q| (q - d).norm() > 1e-12) {
                duals.push(d);
            }
        }
        if duals.len() > 1 && (duals[0] - duals[duals.len() - 1]).norm() <= 1e-12 {
            duals.pop();
        }
        Polygon2::hull(self.frame, &duals)
    }

    /// Dual boundary point attached to boundary point `x`: the mean of the dual
    /// vertices of all edges through `x`.
    pub fn contact(&self, x: &Vec2, tol: f64) -> Result<Vec2> {
        let g = self.gauge(x)?;
        if (g - 1.0).abs() > 1e-6 {
            return Err(Error::NotOnBoundary { gauge: g });
        }
        let mut sum = Vec2::zeros();
        let mut count = 0usize;
        for i in 0..self.len() {
            let (n, c) = self.edge(i);
            if (c - n.dot(x)).abs() <= tol * c.max(1.0) {
                sum += n / c;
                count += 1;
            }
        }
        if count == 0 {
            return Err(Error::NotOnBoundary { gauge: g });
        }
        Ok(sum / count as f64)
    }

    /// Intersection with the halfplane `{p : n·p ≤ c}`; `None` when it has no area.
    pub fn clip(&self, n: &Vec2, c: f64) -> Option<Polygon2> {
        let clipped = clip_ring(&self.vertices, n, c);
        Polygon2::hull(self.frame, &clipped).ok()
    }

    /// Same polygon with vertices mapped by `f` (which must preserve orientation).
    pub fn map(&self, f: impl Fn(&Vec2) -> Vec2) -> Result<Polygon2> {
        let pts: Vec<Vec2> = self.vertices.iter().map(f).collect();
        Polygon2::hull(self.frame, &pts)
    }

    /// Hausdorff distance between the vertex sets of two polygons.
    pub fn vertex_distance(&self, other: &Polygon2) -> f64 {
        let lift = |p: &Polygon2| p.vertices.iter().map(|v| Vec3::new(v.x, v.y, 0.0)).collect::<Vec<_>>();
        super::hausdorff(&lift(self), &lift(other))
    }
}

/// Sutherland–Hodgman clip of a convex ring against `n·p ≤ c`.
pub(crate) fn clip_ring(ring: &[Vec2], n: &Vec2, c: f64) -> Vec<Vec2> {
    let mut out = Vec::with_capacity(ring.len() + 1);
    let m = ring.len();
    for i in 0..m {
        let p = ring[i];
        let q = ring[(i + 1) % m];
        let sp = n.dot(&p) - c;
        let sq = n.dot(&q) - c;
        if sp <= 0.0 {
            out.push(p);
        }
        if (sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0) {
            let t = sp / (sp - sq);
            out.push(p + (q - p) * t);
        }
    }
    out
}
