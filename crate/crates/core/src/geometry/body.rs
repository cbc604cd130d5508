use serde::{Deserialize, Serialize};

use super::{hull, Mat3, Vec3, FACET_TOL};
use crate::error::{Error, Result};

/// Supporting halfspace `normal·x ≤ offset` together with the facet's vertex cycle
/// (indices into the body's vertex list, counterclockwise seen from outside).
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec3,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

impl Facet {
    /// Slack `offset − normal·x`; negative outside.
    pub fn slack(&self, x: &Vec3) -> f64 {
        self.offset - self.normal.dot(x)
    }
}

/// Three dimensional convex polytope given by its extreme points and facets.
#[derive(Debug, Clone)]
pub struct ConvexBody3 {
    vertices: Vec<Vec3>,
    facets: Vec<Facet>,
    /// Facets around each vertex, in cyclic order.
    vertex_facets: Vec<Vec<usize>>,
    /// Every vertex sits on at least three facets. Near-coincident input points can
    /// leave vertices whose incidence is incomplete.
    well_formed: bool,
    volume: f64,
    centroid: Vec3,
}

/// Convex hull of at least four affinely independent points.
pub fn convex_hull_3d(points: &[Vec3]) -> Result<ConvexBody3> {
    ConvexBody3::from_points(points)
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    vertices: Vec<[f64; 3]>,
}

impl ConvexBody3 {
    pub fn from_points(points: &[Vec3]) -> Result<Self> {
        let raw = hull::compute(points)?;
        let facets: Vec<Facet> = raw
            .facets
            .into_iter()
            .map(|f| Facet {
                normal: f.normal,
                offset: f.offset,
                vertices: f.cycle,
            })
            .collect();
        let vertices = raw.vertices;
        let vertex_facets = cyclic_vertex_facets(&vertices, &facets);

        let apex = vertices.iter().sum::<Vec3>() / vertices.len() as f64;
        let mut volume = 0.0;
        let mut moment = Vec3::zeros();
        for f in &facets {
            let p0 = vertices[f.vertices[0]];
            for w in f.vertices[1..].windows(2) {
                let (p1, p2) = (vertices[w[0]], vertices[w[1]]);
                let v = (p0 - apex).dot(&(p1 - apex).cross(&(p2 - apex))) / 6.0;
                volume += v;
                moment += (apex + p0 + p1 + p2) * (v / 4.0);
            }
        }
        if volume <= 0.0 {
            return Err(Error::DegenerateInput("hull has no volume".into()));
        }
        Ok(ConvexBody3 {
            vertices,
            facets,
            well_formed: vertex_facets.iter().all(|r| r.len() >= 3),
            vertex_facets,
            volume,
            centroid: moment / volume,
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Whether the facet rings around vertices are complete.
    pub fn is_well_formed(&self) -> bool {
        self.well_formed
    }

    /// Facets incident to vertex `v`, ordered cyclically around it.
    pub fn vertex_facets(&self, v: usize) -> &[usize] {
        &self.vertex_facets[v]
    }

    /// Undirected edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .facets
            .iter()
            .flat_map(|f| {
                let n = f.vertices.len();
                (0..n).map(move |k| {
                    let (a, b) = (f.vertices[k], f.vertices[(k + 1) % n]);
                    (a.min(b), a.max(b))
                })
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Volume by a fan of tetrahedra from `apex` (any point of the body).
    pub fn volume_from_apex(&self, apex: &Vec3) -> f64 {
        self.facets
            .iter()
            .map(|f| self.facet_area(f) * f.slack(apex) / 3.0)
            .sum()
    }

    /// Area of a facet polygon.
    pub fn facet_area(&self, f: &Facet) -> f64 {
        let n = f.vertices.len();
        let mut s = Vec3::zeros();
        for k in 0..n {
            s += self.vertices[f.vertices[k]].cross(&self.vertices[f.vertices[(k + 1) % n]]);
        }
        0.5 * s.dot(&f.normal)
    }

    /// Center of mass.
    pub fn centroid(&self) -> Vec3 {
        self.centroid
    }

    /// Smallest facet slack at `x`; the distance to the boundary when `x` is inside.
    pub fn min_slack(&self, x: &Vec3) -> f64 {
        self.facets
            .iter()
            .map(|f| f.slack(x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: &Vec3, tol: f64) -> bool {
        self.facets.iter().all(|f| f.normal.dot(x) <= f.offset + tol)
    }

    /// `true` when every facet offset is positive.
    pub fn origin_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset > FACET_TOL)
    }

    /// Minkowski gauge `max_f n·x / c`.
    pub fn gauge(&self, x: &Vec3) -> Result<f64> {
        if !self.origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        Ok(self
            .facets
            .iter()
            .map(|f| f.normal.dot(x) / f.offset)
            .fold(0.0, f64::max))
    }

    /// Boundary point on the ray from the origin through `direction`.
    pub fn radial_point(&self, direction: &Vec3) -> Result<Vec3> {
        if direction.norm() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(direction / self.gauge(direction)?)
    }

    /// Support function `max_v v·u`.
    pub fn support(&self, u: &Vec3) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Image under `x ↦ m·x + t`.
    pub fn affine_image(&self, m: &Mat3, t: &Vec3) -> Result<Self> {
        let pts: Vec<Vec3> = self.vertices.iter().map(|v| m * v + t).collect();
        ConvexBody3::from_points(&pts)
    }

    pub fn linear_image(&self, m: &Mat3) -> Result<Self> {
        self.affine_image(m, &Vec3::zeros())
    }

    pub fn translate(&self, t: &Vec3) -> Self {
        self.affine_image(&Mat3::identity(), t)
            .expect("translation preserves a valid hull")
    }

    pub fn scale(&self, s: f64) -> Result<Self> {
        self.linear_image(&(Mat3::identity() * s))
    }

    pub fn to_json(&self) -> String {
        let doc = PolytopeJson {
            vertices: self.vertices.iter().map(|v| [v.x, v.y, v.z]).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("vertex list serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PolytopeJson = serde_json::from_str(text)?;
        let pts: Vec<Vec3> = doc.vertices.iter().map(|v| Vec3::new(v[0], v[1], v[2])).collect();
        ConvexBody3::from_points(&pts)
    }

    /// Vertex rows `[x, y, z]`.
    pub fn vertex_rows(&self) -> Vec<[f64; 3]> {
        self.vertices.iter().map(|v| [v.x, v.y, v.z]).collect()
    }
}

/// Orders the facets around each vertex by walking across shared edges; falls back
/// to an angular sort if the walk does not close.
fn cyclic_vertex_facets(vertices: &[Vec3], facets: &[Facet]) -> Vec<Vec<usize>> {
    // (facet, predecessor, successor) of each vertex in each incident facet cycle.
    let mut incident: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); vertices.len()];
    for (fi, f) in facets.iter().enumerate() {
        let n = f.vertices.len();
        for k in 0..n {
            incident[f.vertices[k]].push((fi, f.vertices[(k + n - 1) % n], f.vertices[(k + 1) % n]));
        }
    }
    incident
        .iter()
        .enumerate()
        .map(|(v, inc)| {
            let mut order = Vec::with_capacity(inc.len());
            let mut cur = 0;
            for _ in 0..inc.len() {
                order.push(inc[cur].0);
                let next_vertex = inc[cur].2;
                match inc.iter().position(|&(_, p, _)| p == next_vertex) {
                    Some(nx) if nx != 0 || order.len() == inc.len() => cur = nx,
                    _ => break,
                }
            }
            if order.len() == inc.len() && cur == 0 {
                order
            } else {
                angular_order(vertices[v], inc.iter().map(|t| t.0).collect(), facets)
            }
        })
        .collect()
}

fn angular_order(at: Vec3, mut fs: Vec<usize>, facets: &[Facet]) -> Vec<usize> {
    let axis = fs.iter().map(|&f| facets[f].normal).sum::<Vec3>();
    let axis = if axis.norm() > 0.0 { axis.normalize() } else { at.normalize() };
    let (e1, e2) = super::plane_basis(&axis);
    fs.sort_by(|&a, &b| {
        let ang = |f: usize| {
            let n = facets[f].normal;
            n.dot(&e2).atan2(n.dot(&e1))
        };
        ang(a).total_cmp(&ang(b))
    });
    fs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_points() -> Vec<Vec3> {
        let mut pts = Vec::new();
        for x in [-1.0, 1.0] {
            for y in [-1.0, 1.0] {
                for z in [-1.0, 1.0] {
                    pts.push(Vec3::new(x, y, z));
                }
            }
        }
        pts
    }

    #[test]
    fn cube_has_six_square_facets() {
        let mut pts = cube_points();
        pts.push(Vec3::zeros());
        pts.push(Vec3::new(1.0, 0.0, 0.0));
        let cube = convex_hull_3d(&pts).unwrap();
        assert_eq!(cube.vertices().len(), 8);
        assert_eq!(cube.facets().len(), 6);
        assert!(cube.facets().iter().all(|f| f.vertices.len() == 4));
        assert!((cube.volume() - 8.0).abs() < 1e-12);
        assert_eq!(cube.edges().len(), 12);
        assert!(cube.centroid().norm() < 1e-14);
    }

    #[test]
    fn vertex_facet_cycles_are_adjacent() {
        let cube = convex_hull_3d(&cube_points()).unwrap();
        for v in 0..8 {
            let ring = cube.vertex_facets(v);
            assert_eq!(ring.len(), 3);
            for k in 0..3 {
                let a = cube.facets()[ring[k]].normal;
                let b = cube.facets()[ring[(k + 1) % 3]].normal;
                assert!(a.dot(&b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gauge_radial_contains() {
        let cube = convex_hull_3d(&cube_points()).unwrap();
        assert!((cube.gauge(&Vec3::new(2.0, 0.0, 0.0)).unwrap() - 2.0).abs() < 1e-15);
        assert!((cube.gauge(&Vec3::new(1.0, 1.0, 1.0)).unwrap() - 1.0).abs() < 1e-15);
        let r = cube.radial_point(&Vec3::new(2.0, 0.0, 0.0)).unwrap();
        assert!((r - Vec3::x()).norm() < 1e-15);
        assert_eq!(cube.radial_point(&Vec3::zeros()), Err(Error::ZeroDirection));
        assert!(cube.contains(&Vec3::new(0.999, 0.0, 0.0), 1e-9));
        assert!(!cube.contains(&Vec3::new(1.001, 0.0, 0.0), 1e-9));
        let shifted = cube.translate(&Vec3::new(3.0, 0.0, 0.0));
        assert_eq!(shifted.gauge(&Vec3::x()), Err(Error::OriginNotInterior));
    }

    #[test]
    fn coplanar_points_rejected() {
        let pts = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
        ];
        assert!(matches!(convex_hull_3d(&pts), Err(Error::DegenerateInput(_))));
        let line = vec![Vec3::zeros(), Vec3::x(), Vec3::x() * 2.0, Vec3::x() * 3.0];
        assert!(matches!(convex_hull_3d(&line), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn json_round_trip() {
        let cube = convex_hull_3d(&cube_points()).unwrap();
        let back = ConvexBody3::from_json(&cube.to_json()).unwrap();
        assert!(super::super::hausdorff(cube.vertices(), back.vertices()) < 1e-15);
        assert!(ConvexBody3::from_json("{\"vertices\": 3}").is_err());
    }
}
