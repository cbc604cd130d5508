//! Planar sections through the origin, sectors between two boundary points, and the
//! sector product inequalities with their equality cases.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody3, Polygon2, Vec2, Vec3};
use crate::polarity::polar;

/// Sector angles closer than this to `0` or `π` are rejected.
pub const ANGLE_TOL: f64 = 1e-6;
/// Allowed deviation of a boundary point's gauge from 1.
pub const BOUNDARY_TOL: f64 = 1e-6;
/// Vertices within this distance of the plane count as lying in it.
const PLANE_TOL: f64 = 1e-9;

fn cross2(a: &Vec2, b: &Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

fn angle_between(a: &Vec2, b: &Vec2) -> f64 {
    cross2(a, b).atan2(a.dot(b))
}

/// Rotation of a planar vector by `angle`.
pub fn rotate2(v: &Vec2, angle: f64) -> Vec2 {
    let (s, c) = angle.sin_cos();
    Vec2::new(c * v.x - s * v.y, s * v.x + c * v.y)
}

fn check_boundary(body: &ConvexBody3, x: &Vec3) -> Result<()> {
    let g = body.gauge(x)?;
    if (g - 1.0).abs() > BOUNDARY_TOL {
        return Err(Error::NotOnBoundary { gauge: g });
    }
    Ok(())
}

/// Frame `(a/|a|, Gram–Schmidt of b)` of the plane through `o`, `a`, `b`.
pub fn section_frame(a: &Vec3, b: &Vec3) -> Result<(Vec3, Vec3)> {
    let u1 = a.normalize();
    let w = b - u1 * b.dot(&u1);
    if a.cross(b).norm() <= 1e-9 * a.norm() * b.norm() || w.norm() == 0.0 {
        return Err(Error::ParallelPoints);
    }
    Ok((u1, w.normalize()))
}

/// Intersection of `body` with the plane with orthonormal frame `frame`.
pub fn plane_section(body: &ConvexBody3, frame: (Vec3, Vec3)) -> Result<Polygon2> {
    let n = frame.0.cross(&frame.1);
    let verts = body.vertices();
    let height: Vec<f64> = verts.iter().map(|v| n.dot(v)).collect();
    let mut pts: Vec<Vec3> = verts
        .iter()
        .zip(&height)
        .filter(|(_, h)| h.abs() <= PLANE_TOL)
        .map(|(v, _)| *v)
        .collect();
    for (i, j) in body.edges() {
        let (hi, hj) = (height[i], height[j]);
        if (hi > PLANE_TOL && hj < -PLANE_TOL) || (hi < -PLANE_TOL && hj > PLANE_TOL) {
            let t = hi / (hi - hj);
            pts.push(verts[i] + (verts[j] - verts[i]) * t);
        }
    }
    let planar: Vec<Vec2> = pts
        .iter()
        .map(|p| Vec2::new(p.dot(&frame.0), p.dot(&frame.1)))
        .collect();
    Polygon2::hull(frame, &planar)
}

/// Section `K ∩ H` of the plane `H` through `o`, `a`, `b`; `a` and `b` must lie on `∂K`.
pub fn cross_section(body: &ConvexBody3, a: &Vec3, b: &Vec3) -> Result<Polygon2> {
    let frame = section_frame(a, b)?;
    check_boundary(body, a)?;
    check_boundary(body, b)?;
    plane_section(body, frame)
}

/// The part of `section` inside the cone `pos(a, b)`; the origin becomes a vertex.
pub fn sector(section: &Polygon2, a: &Vec2, b: &Vec2) -> Result<Polygon2> {
    let xi = angle_between(a, b);
    if !(xi > ANGLE_TOL && xi < std::f64::consts::PI - ANGLE_TOL) {
        return Err(Error::BadAngle(xi));
    }
    let first = section
        .clip(&Vec2::new(a.y, -a.x), 0.0)
        .ok_or(Error::ZeroArea)?;
    first.clip(&Vec2::new(-b.y, b.x), 0.0).ok_or(Error::ZeroArea)
}

/// A sector `L = K ∩ pos(a, b)` of a planar body together with the dual sector
/// `L° = K° ∩ pos(a°, b°)`, where `a°`, `b°` are dual boundary points with
/// `a·a° = b·b° = 1`.
#[derive(Debug, Clone)]
pub struct SectorPair {
    pub l: Polygon2,
    pub l_polar: Polygon2,
    pub a: Vec2,
    pub b: Vec2,
    pub a_polar: Vec2,
    pub b_polar: Vec2,
    pub xi: f64,
}

impl SectorPair {
    /// Builds the pair from a planar body containing `o` and two of its boundary points.
    /// The dual points are the averaged active edge duals.
    pub fn from_section(section: &Polygon2, a: &Vec2, b: &Vec2) -> Result<SectorPair> {
        let dual = section.polar(&Vec2::zeros())?;
        SectorPair::with_dual(section, &dual, a, b)
    }

    /// Same pair, but with the dual body obtained by projecting the vertices of the 3D
    /// polar onto the plane of the section.
    pub fn projected(body: &ConvexBody3, a: &Vec3, b: &Vec3) -> Result<SectorPair> {
        let section = cross_section(body, a, b)?;
        let frame = section.frame();
        let body_polar = polar(body, &Vec3::zeros())?;
        let shadow: Vec<Vec2> = body_polar
            .vertices()
            .iter()
            .map(|y| Vec2::new(y.dot(&frame.0), y.dot(&frame.1)))
            .collect();
        let dual = Polygon2::hull(frame, &shadow)?;
        SectorPair::with_dual(&section, &dual, &section.project(a), &section.project(b))
    }

    /// Pair on a planar body with `a` in direction `theta` and `b` rotated by `xi`.
    pub fn from_angles(section: &Polygon2, theta: f64, xi: f64) -> Result<SectorPair> {
        let dir = Vec2::new(theta.cos(), theta.sin());
        let a = section.radial_point(&dir)?;
        let b = section.radial_point(&rotate2(&dir, xi))?;
        SectorPair::from_section(section, &a, &b)
    }

    fn with_dual(section: &Polygon2, dual: &Polygon2, a: &Vec2, b: &Vec2) -> Result<SectorPair> {
        let l = sector(section, a, b)?;
        let a_polar = section.contact(a, 1e-9)?;
        let b_polar = section.contact(b, 1e-9)?;
        let l_polar = sector(dual, &a_polar, &b_polar)?;
        Ok(SectorPair {
            l,
            l_polar,
            a: *a,
            b: *b,
            a_polar,
            b_polar,
            xi: angle_between(a, b),
        })
    }

    /// `|L| · |L°|`.
    pub fn product(&self) -> f64 {
        self.l.area() * self.l_polar.area()
    }
}

/// The two points `t° ∈ L°` and `t ∈ L` built from the sector areas.
pub fn lemma1_testpoints(pair: &SectorPair) -> Result<(Vec2, Vec2)> {
    let (area, area_polar) = (pair.l.area(), pair.l_polar.area());
    if area <= 0.0 || area_polar <= 0.0 {
        return Err(Error::ZeroArea);
    }
    let (a, b, ap, bp) = (pair.a, pair.b, pair.a_polar, pair.b_polar);
    let t_polar = Vec2::new(-a.y + b.y, a.x - b.x) / (2.0 * area);
    let t = Vec2::new(-ap.y + bp.y, ap.x - bp.x) / (2.0 * area_polar);
    Ok((t_polar, t))
}

/// `|L||L°| − (a − b)·(a° − b°)/4`, nonnegative for every pair.
pub fn check_lemma1(pair: &SectorPair) -> f64 {
    pair.product() - (pair.a - pair.b).dot(&(pair.a_polar - pair.b_polar)) / 4.0
}

/// `|L||L°| − (1 − cos ξ)/2` for pairs with `b = R_ξ a` and `b° = R_ξ a°` (checked
/// to `tol`).
pub fn check_lemma2(pair: &SectorPair, tol: f64) -> Result<f64> {
    let ra = rotate2(&pair.a, pair.xi);
    let rap = rotate2(&pair.a_polar, pair.xi);
    let da = (pair.b - ra).norm();
    let dp = (pair.b_polar - rap).norm();
    if da > tol * pair.a.norm().max(1.0) || dp > tol * pair.a_polar.norm().max(1.0) {
        return Err(Error::HypothesisViolated(format!(
            "pair is not rotation symmetric (|b − Ra| = {da:e}, |b° − Ra°| = {dp:e})"
        )));
    }
    Ok(pair.product() - (1.0 - pair.xi.cos()) / 2.0)
}

/// Shape of a sector pair attaining the rotation bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityCase {
    /// `L = oacb` with `c = (a + b)/(1 + cos ξ)` and `L° = o a° b°`.
    CaseI,
    /// `L = oab` and `L° = o a° c° b°`.
    #[serde(rename = "case_ii")]
    CaseII,
    Neither,
}

fn same_vertex_set(poly: &Polygon2, expected: &[Vec2], tol: f64) -> bool {
    let verts = poly.vertices();
    verts.len() == expected.len()
        && expected
            .iter()
            .all(|e| verts.iter().any(|v| (v - e).norm() <= tol))
}

/// Decides which equality configuration a near-extremal pair is in.
pub fn classify_equality(pair: &SectorPair, tol: f64) -> Result<EqualityCase> {
    for (p, q) in [(pair.a, pair.a_polar), (pair.b, pair.b_polar)] {
        let dev = angle_between(&p, &q).abs();
        if dev > ANGLE_TOL {
            return Err(Error::HypothesisViolated(format!(
                "boundary point and its dual are not parallel ({dev:e} rad)"
            )));
        }
    }
    let margin = pair.product() - (1.0 - pair.xi.cos()) / 2.0;
    if margin.abs() >= tol {
        return Ok(EqualityCase::Neither);
    }
    let k = 1.0 + pair.xi.cos();
    let o = Vec2::zeros();
    let c = (pair.a + pair.b) / k;
    let c_polar = (pair.a_polar + pair.b_polar) / k;
    if same_vertex_set(&pair.l, &[o, pair.a, c, pair.b], tol)
        && same_vertex_set(&pair.l_polar, &[o, pair.a_polar, pair.b_polar], tol)
    {
        return Ok(EqualityCase::CaseI);
    }
    if same_vertex_set(&pair.l, &[o, pair.a, pair.b], tol)
        && same_vertex_set(&pair.l_polar, &[o, pair.a_polar, c_polar, pair.b_polar], tol)
    {
        return Ok(EqualityCase::CaseII);
    }
    Ok(EqualityCase::Neither)
}

/// Named planar bodies centred at the origin: `square` `[−1,1]²`, `diamond`
/// `|x| + |y| ≤ 1`, `triangle`, `hexagon`, `ngon` (regular, circumradius 1, a vertex on
/// the positive x-axis) and `disc` (regular 256-gon).
pub fn planar_body(name: &str, l: Option<usize>) -> Result<Polygon2> {
    let pi = std::f64::consts::PI;
    match name {
        "square" => Polygon2::regular(4, 2f64.sqrt(), pi / 4.0),
        "diamond" => Polygon2::regular(4, 1.0, 0.0),
        "triangle" => Polygon2::regular(3, 1.0, 0.0),
        "hexagon" => Polygon2::regular(6, 1.0, 0.0),
        "ngon" => Polygon2::regular(l.ok_or_else(|| Error::BadOrder("ngon needs l".into()))?, 1.0, 0.0),
        "disc" => Polygon2::regular(256, 1.0, 0.0),
        _ => Err(Error::UnknownName(name.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{cube, octahedron, simplex};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn axis_sections() {
        let s = cross_section(&cube(), &Vec3::x(), &Vec3::y()).unwrap();
        assert_eq!(s.len(), 4);
        assert!((s.area() - 4.0).abs() < 1e-12);
        let d = cross_section(&octahedron(), &Vec3::x(), &Vec3::y()).unwrap();
        assert!((d.area() - 2.0).abs() < 1e-12);
        let tri = simplex();
        let v = tri.vertices();
        let t = cross_section(&tri, &v[0], &v[1]).unwrap();
        assert_eq!(t.len(), 3);
        assert!(matches!(
            cross_section(&cube(), &Vec3::x(), &(Vec3::x() * 1.0)),
            Err(Error::ParallelPoints)
        ));
        assert!(matches!(
            cross_section(&cube(), &(Vec3::x() * 0.5), &Vec3::y()),
            Err(Error::NotOnBoundary { .. })
        ));
    }

    #[test]
    fn sector_areas() {
        let (a, b) = (Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0));
        let sq = planar_body("square", None).unwrap();
        assert!((sector(&sq, &a, &b).unwrap().area() - 1.0).abs() < 1e-12);
        let dia = planar_body("diamond", None).unwrap();
        assert!((sector(&dia, &a, &b).unwrap().area() - 0.5).abs() < 1e-12);
        let hex = planar_body("hexagon", None).unwrap();
        let v = hex.vertices();
        let s = sector(&hex, &v[0], &v[1]).unwrap();
        assert!((s.area() - 3f64.sqrt() / 4.0).abs() < 1e-12);
        assert!(matches!(sector(&sq, &a, &(-a)), Err(Error::BadAngle(_))));
    }

    #[test]
    fn square_pair_testpoints_and_margins() {
        let sq = planar_body("square", None).unwrap();
        let pair = SectorPair::from_angles(&sq, 0.0, FRAC_PI_2).unwrap();
        assert!((pair.a_polar - Vec2::new(1.0, 0.0)).norm() < 1e-12);
        let (tp, t) = lemma1_testpoints(&pair).unwrap();
        assert!((tp - Vec2::new(0.5, 0.5)).norm() < 1e-12);
        assert!((t - Vec2::new(1.0, 1.0)).norm() < 1e-12);
        assert!(pair.l_polar.contains(&tp, 1e-12) && pair.l.contains(&t, 1e-12));
        assert!(check_lemma2(&pair, 1e-9).unwrap().abs() < 1e-12);
        assert_eq!(classify_equality(&pair, 1e-6).unwrap(), EqualityCase::CaseI);
    }

    #[test]
    fn diamond_is_case_ii_and_disc_neither() {
        let dia = planar_body("diamond", None).unwrap();
        let pair = SectorPair::from_angles(&dia, 0.0, FRAC_PI_2).unwrap();
        assert_eq!(classify_equality(&pair, 1e-6).unwrap(), EqualityCase::CaseII);
        let disc = planar_body("disc", None).unwrap();
        let pair = SectorPair::from_angles(&disc, 0.0, FRAC_PI_2).unwrap();
        let m = check_lemma2(&pair, 1e-9).unwrap();
        assert!((m - 0.1169).abs() < 1e-3, "{m}");
        assert_eq!(classify_equality(&pair, 1e-6).unwrap(), EqualityCase::Neither);
    }

    #[test]
    fn regular_polygon_sectors_are_tight() {
        for l in 3..=12 {
            let p = planar_body("ngon", Some(l)).unwrap();
            let pair = SectorPair::from_angles(&p, 0.0, 2.0 * PI / l as f64).unwrap();
            assert!(check_lemma2(&pair, 1e-9).unwrap().abs() < 1e-12, "l = {l}");
        }
    }

    #[test]
    fn non_rotational_pair_rejected() {
        let rect = Polygon2::planar(&[
            Vec2::new(-2.0, -1.0),
            Vec2::new(2.0, -1.0),
            Vec2::new(2.0, 1.0),
            Vec2::new(-2.0, 1.0),
        ])
        .unwrap();
        let pair = SectorPair::from_angles(&rect, 0.0, FRAC_PI_2).unwrap();
        assert!(matches!(check_lemma2(&pair, 1e-9), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn projected_dual_matches_planar_polar() {
        let body = cube().linear_image(&crate::geometry::axis_rotation(&Vec3::new(1.0, 2.0, 3.0), 0.7)).unwrap();
        let a = body.radial_point(&Vec3::new(1.0, 0.2, 0.1)).unwrap();
        let b = body.radial_point(&Vec3::new(-0.3, 1.0, 0.4)).unwrap();
        let p = SectorPair::projected(&body, &a, &b).unwrap();
        let s = cross_section(&body, &a, &b).unwrap();
        let q = SectorPair::from_section(&s, &s.project(&a), &s.project(&b)).unwrap();
        assert!(p.l_polar.vertex_distance(&q.l_polar) < 1e-9);
    }
}
