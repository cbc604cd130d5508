//! Vectors, planar polygons and three dimensional convex polytopes.

mod body;
mod hull;
mod polygon;

pub use body::{convex_hull_3d, ConvexBody3, Facet};
pub use polygon::{convex_hull_2d, Polygon2};

/// Column vector in R³.
pub type Vec3 = nalgebra::Vector3<f64>;
/// Point or vector in a plane frame.
pub type Vec2 = nalgebra::Vector2<f64>;
/// 3×3 real matrix; group elements are orthogonal ones.
pub type Mat3 = nalgebra::Matrix3<f64>;

/// Euclidean distance below which two input points are merged.
pub const DEDUP_TOL: f64 = 1e-9;
/// Relative distance below which a point counts as lying on a hull plane.
pub const COPLANAR_TOL: f64 = 1e-10;
/// Slack allowed when checking facet inequalities.
pub const FACET_TOL: f64 = 1e-9;
/// Orthogonality tolerance for group generators.
pub const ORTHO_TOL: f64 = 1e-12;

/// Largest deviation of `mᵀm` from the identity.
pub fn orthogonality_defect(m: &Mat3) -> f64 {
    (m.transpose() * m - Mat3::identity()).abs().max()
}

/// `true` when `m` is orthogonal with determinant ±1 within `tol`.
pub fn is_orthogonal(m: &Mat3, tol: f64) -> bool {
    orthogonality_defect(m) <= tol && (m.determinant().abs() - 1.0).abs() <= tol
}

/// Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Vec3], b: &[Vec3]) -> f64 {
    fn directed(from: &[Vec3], to: &[Vec3]) -> f64 {
        from.iter()
            .map(|p| {
                to.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
    if a.is_empty() || b.is_empty() {
        return if a.len() == b.len() { 0.0 } else { f64::INFINITY };
    }
    directed(a, b).max(directed(b, a))
}

/// Removes points closer than `tol` to an earlier point, keeping order.
pub fn dedup_points(points: &[Vec3], tol: f64) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| (p - q).norm() <= tol) {
            out.push(*p);
        }
    }
    out
}

/// Rotation by `angle` about the unit vector `axis` (right-hand rule).
pub fn axis_rotation(axis: &Vec3, angle: f64) -> Mat3 {
    let rot = nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(*axis), angle);
    *rot.matrix()
}

/// Orthonormal pair spanning the plane orthogonal to `n`.
pub fn plane_basis(n: &Vec3) -> (Vec3, Vec3) {
    let n = n.normalize();
    let helper = if n.x.abs() < 0.6 {
        Vec3::x()
    } else if n.y.abs() < 0.6 {
        Vec3::y()
    } else {
        Vec3::z()
    };
    let e1 = (helper - n * n.dot(&helper)).normalize();
    let e2 = n.cross(&e1);
    (e1, e2)
}

/// Matrix from nine row-major entries.
pub fn mat3_from_rows(entries: &[f64; 9]) -> Mat3 {
    Mat3::from_row_slice(entries)
}

/// Row-major entries of `m`.
pub fn mat3_to_rows(m: &Mat3) -> [f64; 9] {
    let mut out = [0.0; 9];
    for r in 0..3 {
        for c in 0..3 {
            out[3 * r + c] = m[(r, c)];
        }
    }
    out
}
