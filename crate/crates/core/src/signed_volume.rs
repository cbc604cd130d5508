//! Boundary curves, curve vectors `½∮ r × dr`, cone volumes over boundary patches, the
//! contact map `∂K → ∂K°`, and the per-group chains of inequalities behind the bounds.

use serde::{Deserialize, Serialize};

use crate::bodies::{bound_family, bound_report, golden_ratio, BoundFamily};
use crate::error::{Error, Result};
use crate::geometry::{plane_basis, ConvexBody3, Vec2, Vec3};
use crate::polarity::{polar, BoundReport};
use crate::sections::{plane_section, section_frame, BOUNDARY_TOL};
use crate::symmetry::{invariance_defect, rotation_z, GroupKind};

/// Default number of chord subdivisions per arc.
pub const SAMPLES_PER_ARC: usize = 64;
/// Relative slack for a facet to count as active at a boundary point.
const ACTIVE_TOL: f64 = 1e-9;

/// Oriented polyline on the boundary of a body.
///
/// `arc_starts[i]` is the index of anchor `i` in `samples`. For closed curves the final
/// anchor (equal to the first) is not repeated.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub samples: Vec<Vec3>,
    pub closed: bool,
    pub anchors: Vec<Vec3>,
    pub arc_starts: Vec<usize>,
}

impl BoundaryCurve {
    /// Curve through explicit points (no body needed).
    pub fn polyline(points: Vec<Vec3>, closed: bool) -> BoundaryCurve {
        let anchors = match (points.first(), points.last()) {
            (Some(a), Some(b)) => vec![*a, *b],
            _ => Vec::new(),
        };
        BoundaryCurve {
            samples: points,
            closed,
            anchors,
            arc_starts: vec![0],
        }
    }

    /// Same image traversed backwards.
    pub fn reversed(&self) -> BoundaryCurve {
        let mut samples = self.samples.clone();
        samples.reverse();
        if self.closed && !samples.is_empty() {
            samples.rotate_right(1);
        }
        let mut anchors = self.anchors.clone();
        anchors.reverse();
        BoundaryCurve {
            samples,
            closed: self.closed,
            anchors,
            arc_starts: vec![0],
        }
    }

    /// Image under a linear map.
    pub fn transformed(&self, m: &crate::geometry::Mat3) -> BoundaryCurve {
        BoundaryCurve {
            samples: self.samples.iter().map(|p| m * p).collect(),
            closed: self.closed,
            anchors: self.anchors.iter().map(|p| m * p).collect(),
            arc_starts: self.arc_starts.clone(),
        }
    }

    /// Consecutive point pairs, including the closing segment of a closed curve.
    fn segments(&self) -> impl Iterator<Item = (Vec3, Vec3)> + '_ {
        let n = self.samples.len();
        let count = if self.closed { n } else { n.saturating_sub(1) };
        (0..count).map(move |i| (self.samples[i], self.samples[(i + 1) % n]))
    }
}

fn check_boundary(body: &ConvexBody3, x: &Vec3) -> Result<()> {
    let g = body.gauge(x)?;
    if (g - 1.0).abs() > BOUNDARY_TOL {
        return Err(Error::NotOnBoundary { gauge: g });
    }
    Ok(())
}

/// Samples of the boundary arc from `a` to `b`: radial projections of the uniform chord
/// subdivision, merged with the vertices of the section polygon so the polyline follows
/// the boundary exactly. Includes both endpoints.
fn arc_samples(body: &ConvexBody3, a: &Vec3, b: &Vec3, n: usize) -> Result<Vec<Vec3>> {
    let frame = section_frame(a, b).map_err(|_| Error::ParallelAnchors)?;
    let section = plane_section(body, frame)?;
    let to2 = |p: &Vec3| Vec2::new(p.dot(&frame.0), p.dot(&frame.1));
    let (a2, b2) = (to2(a), to2(b));
    let angle = |p: &Vec2| (a2.x * p.y - a2.y * p.x).atan2(a2.dot(p));
    let xi = angle(&b2);
    let mut pts: Vec<(f64, Vec3)> = Vec::with_capacity(n + section.len());
    for k in 1..n {
        let t = k as f64 / n as f64;
        let q = a * (1.0 - t) + b * t;
        pts.push((angle(&to2(&q)), body.radial_point(&q)?));
    }
    for v in section.vertices() {
        let th = angle(v);
        if th > 1e-12 && th < xi - 1e-12 {
            pts.push((th, section.lift(v)));
        }
    }
    pts.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut out = vec![*a];
    let mut last = 0.0;
    for (th, p) in pts {
        if th - last > 1e-12 {
            out.push(p);
            last = th;
        }
    }
    if xi - last <= 1e-12 {
        out.pop();
    }
    out.push(*b);
    Ok(out)
}

/// Boundary curve through `anchors`; it is closed when the last anchor repeats the first.
pub fn curve(body: &ConvexBody3, anchors: &[Vec3], samples_per_arc: usize) -> Result<BoundaryCurve> {
    if anchors.len() < 2 {
        return Err(Error::DegenerateInput("a curve needs at least two anchors".into()));
    }
    if samples_per_arc < 2 {
        return Err(Error::DegenerateInput("samples_per_arc must be at least 2".into()));
    }
    for a in anchors {
        check_boundary(body, a)?;
    }
    let closed = anchors.len() > 2 && (anchors[0] - anchors[anchors.len() - 1]).norm() <= 1e-12;
    let mut samples: Vec<Vec3> = Vec::new();
    let mut arc_starts = Vec::new();
    for w in anchors.windows(2) {
        let arc = arc_samples(body, &w[0], &w[1], samples_per_arc)?;
        arc_starts.push(samples.len());
        samples.extend_from_slice(&arc[..arc.len() - 1]);
    }
    if !closed {
        samples.push(anchors[anchors.len() - 1]);
    }
    Ok(BoundaryCurve {
        samples,
        closed,
        anchors: anchors.to_vec(),
        arc_starts,
    })
}

/// `½ Σ rᵢ × rᵢ₊₁` along the polyline.
pub fn curve_vector(c: &BoundaryCurve) -> Vec3 {
    c.segments().map(|(p, q)| p.cross(&q)).sum::<Vec3>() * 0.5
}

/// Facets active at `x` (slack within a relative `ACTIVE_TOL` of the gauge).
fn active_duals(body: &ConvexBody3, x: &Vec3) -> Result<Vec<Vec3>> {
    let g = body.gauge(x)?;
    if (g - 1.0).abs() > BOUNDARY_TOL {
        return Err(Error::NotOnBoundary { gauge: g });
    }
    Ok(body
        .facets()
        .iter()
        .filter(|f| f.normal.dot(x) / f.offset >= g * (1.0 - ACTIVE_TOL))
        .map(|f| f.normal / f.offset)
        .collect())
}

/// Dual boundary point attached to `x ∈ ∂K`: the mean of the dual vertices of the active
/// facets, scaled radially onto `∂K°`.
pub fn contact_point(body: &ConvexBody3, x: &Vec3) -> Result<Vec3> {
    let duals = active_duals(body, x)?;
    let mean = duals.iter().sum::<Vec3>() / duals.len() as f64;
    // The gauge of K° is the support function of K.
    Ok(mean / body.support(&mean))
}

/// Image of a boundary curve on `∂K°`. Each boundary segment lies in one face of `K`
/// and maps to that face's contact point; between them the image runs straight along
/// the dual faces. Anchors map to their own contact points.
pub fn image_curve(body: &ConvexBody3, c: &BoundaryCurve) -> Result<BoundaryCurve> {
    let n = c.samples.len();
    let mut out: Vec<Vec3> = Vec::new();
    let push = |p: Vec3, out: &mut Vec<Vec3>| {
        if out.last().map_or(true, |q| (q - p).norm() > 1e-12) {
            out.push(p);
        }
    };
    let mut bounds: Vec<usize> = c.arc_starts.clone();
    bounds.push(if c.closed { n } else { n - 1 });
    let mut anchors = Vec::with_capacity(bounds.len());
    for w in bounds.windows(2) {
        let (s, e) = (w[0], w[1]);
        let start = c.samples[s];
        let end = c.samples[e % n];
        let y0 = contact_point(body, &start)?;
        anchors.push(y0);
        push(y0, &mut out);
        for i in s..e {
            let mid = (c.samples[i] + c.samples[(i + 1) % n]) * 0.5;
            push(contact_point(body, &mid)?, &mut out);
        }
        if !c.closed || e < n {
            push(contact_point(body, &end)?, &mut out);
        }
    }
    if c.closed {
        while out.len() > 1 && (out[0] - out[out.len() - 1]).norm() <= 1e-12 {
            out.pop();
        }
    } else if let Some(last) = c.samples.last() {
        anchors.push(contact_point(body, last)?);
    }
    Ok(BoundaryCurve {
        samples: out,
        closed: c.closed,
        anchors,
        arc_starts: vec![0],
    })
}

fn clip_polygon(poly: &[Vec3], m: &Vec3) -> Vec<Vec3> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (sp, sq) = (p.dot(m), q.dot(m));
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0) {
            out.push(p + (q - p) * (sp / (sp - sq)));
        }
    }
    out
}

/// Volume of `K ∩ pos(u, v, w)`.
fn triangle_cone_volume(body: &ConvexBody3, u: &Vec3, v: &Vec3, w: &Vec3) -> f64 {
    let det = u.dot(&v.cross(w));
    if det.abs() <= 1e-15 * u.norm() * v.norm() * w.norm() {
        return 0.0;
    }
    let (v, w) = if det > 0.0 { (v, w) } else { (w, v) };
    let walls = [v.cross(w), w.cross(u), u.cross(v)];
    let verts = body.vertices();
    let mut total = 0.0;
    for f in body.facets() {
        let mut poly: Vec<Vec3> = f.vertices.iter().map(|&i| verts[i]).collect();
        for m in &walls {
            if poly.iter().all(|p| p.dot(m) < 0.0) {
                poly.clear();
                break;
            }
            poly = clip_polygon(&poly, m);
            if poly.len() < 3 {
                poly.clear();
                break;
            }
        }
        if poly.len() >= 3 {
            let mut s = Vec3::zeros();
            for i in 0..poly.len() {
                s += poly[i].cross(&poly[(i + 1) % poly.len()]);
            }
            total += f.offset * 0.5 * s.dot(&f.normal) / 3.0;
        }
    }
    total
}

fn segments_cross(p1: &Vec2, p2: &Vec2, q1: &Vec2, q2: &Vec2) -> bool {
    let orient = |a: &Vec2, b: &Vec2, c: &Vec2| (b - a).perp(&(c - a));
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Volume of the cone from the origin over the boundary patch bounded by a closed curve,
/// the patch being the side seen counterclockwise from outside.
pub fn patch_cone_volume(body: &ConvexBody3, c: &BoundaryCurve) -> Result<f64> {
    if !c.closed {
        return Err(Error::NotClosed);
    }
    if c.samples.len() < 3 {
        return Err(Error::SelfIntersecting("fewer than three points".into()));
    }
    let dirs: Vec<Vec3> = c.samples.iter().map(|p| p.normalize()).collect();
    let sum = dirs.iter().sum::<Vec3>();
    if sum.norm() <= 1e-9 {
        return Err(Error::SelfIntersecting("curve is not inside an open hemisphere".into()));
    }
    let h = sum.normalize();
    if dirs.iter().any(|d| d.dot(&h) <= 1e-9) {
        return Err(Error::SelfIntersecting("curve is not inside an open hemisphere".into()));
    }
    let (e1, e2) = plane_basis(&h);
    let flat: Vec<Vec2> = dirs
        .iter()
        .map(|d| Vec2::new(d.dot(&e1), d.dot(&e2)) / d.dot(&h))
        .collect();
    let n = flat.len();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_cross(&flat[i], &flat[(i + 1) % n], &flat[j], &flat[(j + 1) % n]) {
                return Err(Error::SelfIntersecting(format!("segments {i} and {j} cross")));
            }
        }
    }
    let area = (0..n).map(|i| flat[i].perp(&flat[(i + 1) % n])).sum::<f64>() / 2.0;
    if area.abs() <= 1e-14 {
        return Err(Error::SelfIntersecting("curve encloses no area".into()));
    }
    let mut signed = 0.0;
    for i in 0..n {
        let (p, q) = (c.samples[i], c.samples[(i + 1) % n]);
        let s = h.dot(&p.cross(&q)).signum();
        signed += s * triangle_cone_volume(body, &h, &p, &q);
    }
    Ok(if area > 0.0 { signed } else { body.volume() + signed })
}

/// `|o * S| − x·C̄/3`; nonnegative for every `x ∈ K`.
pub fn check_lemma4(body: &ConvexBody3, c: &BoundaryCurve, x: &Vec3) -> Result<f64> {
    if !body.contains(x, 1e-9) {
        return Err(Error::PointOutside);
    }
    Ok(patch_cone_volume(body, c)? - x.dot(&curve_vector(c)) / 3.0)
}

/// `true` when the patch is the cone from `x` over the curve, i.e. the estimate above is
/// an equality with `x` on the patch.
pub fn is_cone_patch(body: &ConvexBody3, c: &BoundaryCurve, x: &Vec3, tol: f64) -> Result<bool> {
    let on_boundary = body.gauge(x).map_or(false, |g| (g - 1.0).abs() <= BOUNDARY_TOL);
    let scale = patch_cone_volume(body, c)?.abs().max(1.0);
    Ok(on_boundary && check_lemma4(body, c, x)?.abs() <= tol * scale)
}

/// `(|o*S_K(C)| · |o*S_K°(Λ C)|, C̄ · Λ̄C / 9)`; the first is never smaller.
pub fn check_lemma7(body: &ConvexBody3, c: &BoundaryCurve) -> Result<(f64, f64)> {
    let dual = polar(body, &Vec3::zeros())?;
    let image = image_curve(body, c)?;
    let lhs = patch_cone_volume(body, c)? * patch_cone_volume(&dual, &image)?;
    let rhs = curve_vector(c).dot(&curve_vector(&image)) / 9.0;
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    AtLeast,
}

/// One link `lhs (= | ≥) rhs` of a chain of inequalities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainStep {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub holds: bool,
}

impl ChainStep {
    fn new(name: &str, lhs: f64, rhs: f64, relation: Relation) -> ChainStep {
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        let holds = match relation {
            Relation::Equal => (lhs - rhs).abs() <= 1e-7 * scale,
            Relation::AtLeast => lhs >= rhs - 1e-8 * scale,
        };
        ChainStep {
            name: name.to_string(),
            lhs,
            rhs,
            relation,
            holds,
        }
    }
}

/// Result of [`group_bound_check`].
#[derive(Debug, Clone, Serialize)]
pub struct GroupBoundCheck {
    pub report: BoundReport,
    /// Which argument was replayed: `tetrahedral`, `octahedral`, `icosahedral`,
    /// `prismatic`, `dihedral`, or `central_symmetry` (bound taken as given, no chain).
    pub chain: String,
    pub steps: Vec<ChainStep>,
}

impl GroupBoundCheck {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

/// Curve vectors of the arc from `a` to `b` and of its image on `∂K°`.
fn arc_pair(body: &ConvexBody3, a: &Vec3, b: &Vec3) -> Result<(Vec3, Vec3)> {
    let c = curve(body, &[*a, *b], SAMPLES_PER_ARC)?;
    let image = image_curve(body, &c)?;
    Ok((curve_vector(&c), curve_vector(&image)))
}

struct Fundamental {
    cycle: BoundaryCurve,
    image: BoundaryCurve,
    patch: f64,
    patch_polar: f64,
    volume_polar: f64,
}

fn fundamental(body: &ConvexBody3, anchors: &[Vec3]) -> Result<Fundamental> {
    let mut closed = anchors.to_vec();
    closed.push(anchors[0]);
    let cycle = curve(body, &closed, SAMPLES_PER_ARC)?;
    let image = image_curve(body, &cycle)?;
    let dual = polar(body, &Vec3::zeros())?;
    Ok(Fundamental {
        patch: patch_cone_volume(body, &cycle)?,
        patch_polar: patch_cone_volume(&dual, &image)?,
        volume_polar: dual.volume(),
        cycle,
        image,
    })
}

/// Steps shared by all chains: the orbit of the fundamental patch tiles the body and its
/// polar, then the signed volume estimate bounds the patch product.
fn common_steps(body: &ConvexBody3, f: &Fundamental, copies: f64, steps: &mut Vec<ChainStep>) -> f64 {
    steps.push(ChainStep::new(
        "|K| = copies * |K~|",
        body.volume(),
        copies * f.patch,
        Relation::Equal,
    ));
    steps.push(ChainStep::new(
        "|K°| = copies * |K~°|",
        f.volume_polar,
        copies * f.patch_polar,
        Relation::Equal,
    ));
    let total = curve_vector(&f.cycle).dot(&curve_vector(&f.image));
    steps.push(ChainStep::new(
        "9 |K~| |K~°| >= C·Λ(C) over the patch boundary",
        9.0 * f.patch * f.patch_polar,
        total,
        Relation::AtLeast,
    ));
    total
}

fn polyhedral_chain(
    body: &ConvexBody3,
    anchors: [Vec3; 3],
    copies: f64,
    symmetry_factor: f64,
    arc_bound: f64,
    use_rotation_bound: bool,
    bound: f64,
) -> Result<Vec<ChainStep>> {
    let pts: Vec<Vec3> = anchors
        .iter()
        .map(|a| body.radial_point(a))
        .collect::<Result<_>>()?;
    let f = fundamental(body, &pts)?;
    let mut steps = Vec::new();
    let total = common_steps(body, &f, copies, &mut steps);
    let (ca, la) = arc_pair(body, &pts[0], &pts[1])?;
    let x = ca.dot(&la);
    steps.push(ChainStep::new(
        "C·Λ(C) = factor * C(A,B)·Λ(C(A,B))",
        total,
        symmetry_factor * x,
        Relation::Equal,
    ));
    let sector_bound = if use_rotation_bound {
        let cos = pts[0].dot(&pts[1]) / (pts[0].norm() * pts[1].norm());
        (1.0 - cos) / 2.0
    } else {
        let (ya, yb) = (contact_point(body, &pts[0])?, contact_point(body, &pts[1])?);
        (pts[0] - pts[1]).dot(&(ya - yb)) / 4.0
    };
    steps.push(ChainStep::new(
        "C(A,B)·Λ(C(A,B)) >= sector bound",
        x,
        sector_bound,
        Relation::AtLeast,
    ));
    steps.push(ChainStep::new("sector bound = constant", sector_bound, arc_bound, Relation::Equal));
    let product = body.volume() * f.volume_polar;
    let implied = copies * copies / 9.0 * symmetry_factor * arc_bound;
    steps.push(ChainStep::new("implied bound = proven bound", implied, bound, Relation::Equal));
    steps.push(ChainStep::new("|K| |K°| >= proven bound", product, bound, Relation::AtLeast));
    Ok(steps)
}

fn axial_chain(body: &ConvexBody3, l: usize, dihedral: bool, bound: f64) -> Result<Vec<ChainStep>> {
    let rot = rotation_z(l);
    let xi = std::f64::consts::TAU / l as f64;
    let p = body.radial_point(&Vec3::z())?;
    let a = body.radial_point(&Vec3::x())?;
    let b = rot * a;
    let f = fundamental(body, &[p, a, b])?;
    let mut steps = Vec::new();
    let lf = l as f64;
    let total = common_steps(body, &f, 2.0 * lf, &mut steps);

    let (c_pa, l_pa) = arc_pair(body, &p, &a)?;
    let (c_ab, l_ab) = arc_pair(body, &a, &b)?;
    let e_minus_r = crate::geometry::Mat3::identity() - rot;
    let term1 = (e_minus_r * c_pa).dot(&(e_minus_r * l_pa));
    let term2 = (e_minus_r * c_pa).dot(&l_ab);
    let term3 = c_ab.dot(&(e_minus_r * l_pa));
    let term4 = c_ab.dot(&l_ab);
    steps.push(ChainStep::new(
        "C·Λ(C) = (I) + (II) + (III) + (IV)",
        total,
        term1 + term2 + term3 + term4,
        Relation::Equal,
    ));
    let second = if dihedral {
        "(E − R) C(P,A)·Λ(C(A,B)) = 0"
    } else {
        "(II) = 0 by the horizontal mirror"
    };
    steps.push(ChainStep::new(second, term2, 0.0, Relation::Equal));
    steps.push(ChainStep::new("(III) = 0", term3, 0.0, Relation::Equal));
    let x = c_pa.dot(&l_pa);
    steps.push(ChainStep::new(
        "(I) = 2(1 − cos ξ) C(P,A)·Λ(C(P,A))",
        term1,
        2.0 * (1.0 - xi.cos()) * x,
        Relation::Equal,
    ));
    let (yp, ya, yb) = (
        contact_point(body, &p)?,
        contact_point(body, &a)?,
        contact_point(body, &b)?,
    );
    let bound_pa = (p - a).dot(&(yp - ya)) / 4.0;
    let bound_ab = (a - b).dot(&(ya - yb)) / 4.0;
    steps.push(ChainStep::new("C(P,A)·Λ(C(P,A)) >= sector bound", x, bound_pa, Relation::AtLeast));
    steps.push(ChainStep::new("sector bound (P,A) = 1/2", bound_pa, 0.5, Relation::Equal));
    steps.push(ChainStep::new("C(A,B)·Λ(C(A,B)) >= sector bound", term4, bound_ab, Relation::AtLeast));
    steps.push(ChainStep::new(
        "sector bound (A,B) = (1 − cos ξ)/2",
        bound_ab,
        (1.0 - xi.cos()) / 2.0,
        Relation::Equal,
    ));
    let product = body.volume() * f.volume_polar;
    steps.push(ChainStep::new(
        "|K| |K°| >= (4ℓ²/9)(2(1 − cos ξ) X + Y)",
        product,
        4.0 * lf * lf / 9.0 * (2.0 * (1.0 - xi.cos()) * x + term4),
        Relation::AtLeast,
    ));
    steps.push(ChainStep::new("|K| |K°| >= proven bound", product, bound, Relation::AtLeast));
    Ok(steps)
}

/// Replays the argument behind the proven bound of `kind` on a concrete invariant body.
pub fn group_bound_check(body: &ConvexBody3, kind: GroupKind) -> Result<GroupBoundCheck> {
    let Some(family) = bound_family(kind) else {
        return Err(Error::UnsupportedGroup(kind.to_string()));
    };
    let defect = invariance_defect(&kind.group(), body);
    if defect >= 1e-6 {
        return Err(Error::NotInvariant(format!("{kind} (defect {defect:e})")));
    }
    let report = bound_report(body, kind, "")?;
    let bound = report.reference_bound.expect("proven family has a bound");
    let s3 = 1.0 / 3f64.sqrt();
    let phi = golden_ratio();
    let (chain, steps) = match (family, kind) {
        (BoundFamily::Simplex, _) => (
            "tetrahedral",
            polyhedral_chain(
                body,
                [Vec3::new(s3, s3, s3), Vec3::new(s3, -s3, -s3), Vec3::new(-s3, s3, -s3)],
                4.0,
                6.0,
                2.0 / 3.0,
                false,
                bound,
            )?,
        ),
        (BoundFamily::Octahedral, GroupKind::O | GroupKind::Oh) => (
            "octahedral",
            polyhedral_chain(body, [Vec3::x(), Vec3::y(), Vec3::z()], 8.0, 3.0, 0.5, false, bound)?,
        ),
        (BoundFamily::Octahedral, _) => {
            let step = ChainStep::new(
                "P(K) >= P(octahedron) for centrally symmetric K",
                report.product,
                bound,
                Relation::AtLeast,
            );
            ("central_symmetry", vec![step])
        }
        (BoundFamily::Icosahedral, _) => (
            "icosahedral",
            polyhedral_chain(
                body,
                [Vec3::new(0.0, 1.0, phi), Vec3::new(phi, 0.0, 1.0), Vec3::new(1.0, phi, 0.0)],
                20.0,
                3.0 / (phi * phi),
                (1.0 - 1.0 / 5f64.sqrt()) / 2.0,
                true,
                bound,
            )?,
        ),
        (BoundFamily::Prism(l), GroupKind::D(_)) => ("dihedral", axial_chain(body, l, true, bound)?),
        (BoundFamily::Prism(l), _) => ("prismatic", axial_chain(body, l, false, bound)?),
    };
    Ok(GroupBoundCheck {
        report,
        chain: chain.to_string(),
        steps,
    })
}
