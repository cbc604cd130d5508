//! Reference minimizers and the table of proven lower bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{hausdorff, mat3_from_rows, ConvexBody3, Mat3, Vec3};
use crate::polarity::{polar, volume_product, BoundReport, EqualityClass};
use crate::symmetry::GroupKind;

/// Hausdorff distance (after normalization) below which a body matches a minimizer.
pub const MATCH_TOL: f64 = 1e-4;

pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// `(2ℓ²/3)(1 − cos 2π/ℓ)`, the volume product of the ℓ-regular right prism.
pub fn prism_product(l: usize) -> f64 {
    let lf = l as f64;
    2.0 * lf * lf / 3.0 * (1.0 - (std::f64::consts::TAU / lf).cos())
}

pub fn icosahedral_product() -> f64 {
    80.0 / 3.0 * (5.0 - 2.0 * 5f64.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Proven,
    Open,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub body: ConvexBody3,
    /// Largest catalog group leaving the body invariant.
    pub group: GroupKind,
    pub closed_form_product: Option<f64>,
    pub bound_status: BoundStatus,
}

impl CatalogEntry {
    pub fn group_name(&self) -> String {
        self.group.to_string()
    }
}

/// Names accepted by [`reference_body`].
pub const REFERENCE_NAMES: [&str; 10] = [
    "simplex",
    "simplex_polar",
    "octahedron",
    "cube",
    "icosahedron",
    "dodecahedron",
    "prism",
    "bipyramid",
    "hanner_box",
    "hanner_octa",
];

fn hull(points: &[Vec3]) -> ConvexBody3 {
    ConvexBody3::from_points(points).expect("catalog points span space")
}

pub fn simplex() -> ConvexBody3 {
    let s = 1.0 / 3f64.sqrt();
    hull(&[
        Vec3::new(s, s, s),
        Vec3::new(s, -s, -s),
        Vec3::new(-s, s, -s),
        Vec3::new(-s, -s, s),
    ])
}

pub fn octahedron() -> ConvexBody3 {
    hanner_octa([1.0, 1.0, 1.0])
}

pub fn cube() -> ConvexBody3 {
    hanner_box([1.0, 1.0, 1.0])
}

/// Box `∏[−dᵢ, dᵢ]`.
pub fn hanner_box(d: [f64; 3]) -> ConvexBody3 {
    let mut pts = Vec::with_capacity(8);
    for i in 0..8 {
        let s = |b: usize| if i >> b & 1 == 1 { d[b] } else { -d[b] };
        pts.push(Vec3::new(s(0), s(1), s(2)));
    }
    hull(&pts)
}

/// Cross-polytope `conv{±dᵢ eᵢ}`.
pub fn hanner_octa(d: [f64; 3]) -> ConvexBody3 {
    let mut pts = Vec::with_capacity(6);
    for (i, &s) in d.iter().enumerate() {
        let mut e = Vec3::zeros();
        e[i] = s;
        pts.push(e);
        pts.push(-e);
    }
    hull(&pts)
}

/// Icosahedron with vertices `(0, ±1, ±φ)` and their cyclic permutations.
pub fn icosahedron() -> ConvexBody3 {
    let phi = golden_ratio();
    let mut pts = Vec::with_capacity(12);
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            let (a, b) = (s1, s2 * phi);
            pts.push(Vec3::new(0.0, a, b));
            pts.push(Vec3::new(b, 0.0, a));
            pts.push(Vec3::new(a, b, 0.0));
        }
    }
    hull(&pts)
}

pub fn dodecahedron() -> ConvexBody3 {
    polar(&icosahedron(), &Vec3::zeros()).expect("icosahedron contains the origin")
}

/// Right prism over the regular ℓ-gon with vertices `(cos kξ, sin kξ, ±1)`.
pub fn prism(l: usize) -> Result<ConvexBody3> {
    if l < 3 {
        return Err(Error::BadOrder(format!("prism needs l >= 3, got {l}")));
    }
    let xi = std::f64::consts::TAU / l as f64;
    let pts: Vec<Vec3> = (0..l)
        .flat_map(|k| {
            let t = xi * k as f64;
            [Vec3::new(t.cos(), t.sin(), 1.0), Vec3::new(t.cos(), t.sin(), -1.0)]
        })
        .collect();
    Ok(hull(&pts))
}

/// Polar of the prism: apexes `±e₃`.
pub fn bipyramid(l: usize) -> Result<ConvexBody3> {
    polar(&prism(l)?, &Vec3::zeros())
}

/// Rotation taking `(1,1,1)/√3` to `e₃` and the plane `y = z` to `y = 0`; it moves the
/// cube and octahedron into the frame of `S_6` and `D_3d`.
pub fn threefold_frame() -> Mat3 {
    let (a, b, c) = ((2.0 / 3.0f64).sqrt(), 1.0 / 6f64.sqrt(), 1.0 / 2f64.sqrt());
    let d = 1.0 / 3f64.sqrt();
    mat3_from_rows(&[a, -b, -b, 0.0, c, -c, d, d, d])
}

/// Catalog body by name; `l` is required for prisms and bipyramids.
pub fn reference_body(name: &str, l: Option<usize>) -> Result<CatalogEntry> {
    let order = |l: Option<usize>| match l {
        Some(l) if l >= 3 => Ok(l),
        Some(l) => Err(Error::BadOrder(format!("{name} needs l >= 3, got {l}"))),
        None => Err(Error::BadOrder(format!("{name} needs an order l"))),
    };
    let proven = |name: &str, body, group, value| CatalogEntry {
        name: name.to_string(),
        body,
        group,
        closed_form_product: Some(value),
        bound_status: BoundStatus::Proven,
    };
    let entry = match name {
        "simplex" => proven(name, simplex(), GroupKind::Td, 64.0 / 9.0),
        "simplex_polar" => proven(
            name,
            polar(&simplex(), &Vec3::zeros())?,
            GroupKind::Td,
            64.0 / 9.0,
        ),
        "octahedron" => proven(name, octahedron(), GroupKind::Oh, 32.0 / 3.0),
        "cube" => proven(name, cube(), GroupKind::Oh, 32.0 / 3.0),
        "icosahedron" => proven(name, icosahedron(), GroupKind::Ih, icosahedral_product()),
        "dodecahedron" => proven(name, dodecahedron(), GroupKind::Ih, icosahedral_product()),
        "prism" => {
            let l = order(l)?;
            proven(name, prism(l)?, GroupKind::Dh(l), prism_product(l))
        }
        "bipyramid" => {
            let l = order(l)?;
            proven(name, bipyramid(l)?, GroupKind::Dh(l), prism_product(l))
        }
        "hanner_box" => proven(name, cube(), GroupKind::Oh, 32.0 / 3.0),
        "hanner_octa" => proven(name, octahedron(), GroupKind::Oh, 32.0 / 3.0),
        _ => return Err(Error::UnknownName(name.into())),
    };
    Ok(entry)
}

/// Hanner body with a positive diagonal scaling.
pub fn hanner(name: &str, d: [f64; 3]) -> Result<CatalogEntry> {
    if d.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(Error::DegenerateInput("diagonal entries must be positive".into()));
    }
    let body = match name {
        "hanner_box" => hanner_box(d),
        "hanner_octa" => hanner_octa(d),
        _ => return Err(Error::UnknownName(name.into())),
    };
    let group = if d[0] == d[1] && d[1] == d[2] {
        GroupKind::Oh
    } else if d[0] == d[1] {
        GroupKind::Dh(4)
    } else {
        GroupKind::Dh(2)
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        body,
        group,
        closed_form_product: Some(32.0 / 3.0),
        bound_status: BoundStatus::Proven,
    })
}

/// Proven lower bound for a group and the names of the bodies attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProvenBound {
    pub value: f64,
    pub minimizers: [&'static str; 2],
}

/// How a catalog group's bound is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFamily {
    Simplex,
    /// Contains `−E` with the octahedron as a minimizer.
    Octahedral,
    Icosahedral,
    /// Cyclic or dihedral family with the prism as a minimizer.
    Prism(usize),
}

/// Which proven bound applies to a group, if any.
pub fn bound_family(kind: GroupKind) -> Option<BoundFamily> {
    use GroupKind::*;
    match kind {
        T | Td => Some(BoundFamily::Simplex),
        O | Oh | Th => Some(BoundFamily::Octahedral),
        I | Ih => Some(BoundFamily::Icosahedral),
        S(2) | S(6) | Ch(2) | Dh(2) | Dd(3) | Dd(1) => Some(BoundFamily::Octahedral),
        Ch(l) | D(l) | Dh(l) if l >= 3 => Some(BoundFamily::Prism(l)),
        // S_n with n odd generates C_nh.
        S(n) if n >= 3 && n % 2 == 1 => Some(BoundFamily::Prism(n)),
        _ => None,
    }
}

pub fn proven_bound(kind: GroupKind) -> Option<ProvenBound> {
    bound_family(kind).map(|f| match f {
        BoundFamily::Simplex => ProvenBound {
            value: 64.0 / 9.0,
            minimizers: ["simplex", "simplex_polar"],
        },
        BoundFamily::Octahedral => ProvenBound {
            value: 32.0 / 3.0,
            minimizers: ["octahedron", "cube"],
        },
        BoundFamily::Icosahedral => ProvenBound {
            value: icosahedral_product(),
            minimizers: ["icosahedron", "dodecahedron"],
        },
        BoundFamily::Prism(l) => ProvenBound {
            value: prism_product(l),
            minimizers: ["prism", "bipyramid"],
        },
    })
}

/// [`proven_bound`] looked up by Schoenflies name.
pub fn proven_bound_by_name(name: &str, l: Option<usize>) -> Result<Option<ProvenBound>> {
    Ok(proven_bound(GroupKind::parse(name, l)?))
}

/// The two minimizers of a group with a proven bound, placed in that group's frame.
pub fn minimizers(kind: GroupKind) -> Option<(ConvexBody3, ConvexBody3)> {
    let pair = match bound_family(kind)? {
        BoundFamily::Simplex => {
            let s = simplex();
            let d = polar(&s, &Vec3::zeros()).ok()?;
            (s, d)
        }
        BoundFamily::Octahedral => {
            if matches!(kind, GroupKind::S(6) | GroupKind::Dd(3)) {
                let g = threefold_frame();
                (octahedron().linear_image(&g).ok()?, cube().linear_image(&g).ok()?)
            } else {
                (octahedron(), cube())
            }
        }
        BoundFamily::Icosahedral => (icosahedron(), dodecahedron()),
        BoundFamily::Prism(l) => (prism(l).ok()?, bipyramid(l).ok()?),
    };
    Some(pair)
}

fn scaled(points: &[Vec3], m: &Mat3) -> Vec<Vec3> {
    points.iter().map(|p| m * p).collect()
}

/// Vertex set brought to the normal form used for comparison within a bound family.
fn normal_form(body: &ConvexBody3, family: BoundFamily) -> Option<Vec<Vec3>> {
    let verts = body.vertices();
    match family {
        BoundFamily::Simplex | BoundFamily::Icosahedral => {
            let r = verts.iter().map(|v| v.norm()).fold(0.0, f64::max);
            Some(verts.iter().map(|v| v / r).collect())
        }
        BoundFamily::Octahedral => None,
        BoundFamily::Prism(_) => {
            let top = body.gauge(&Vec3::z()).ok()?;
            let radius = verts
                .iter()
                .map(|v| v.xy().norm())
                .fold(0.0, f64::max);
            let far = verts
                .iter()
                .max_by(|a, b| a.xy().norm().total_cmp(&b.xy().norm()))?;
            let angle = far.y.atan2(far.x);
            let s = Mat3::from_diagonal(&Vec3::new(1.0 / radius, 1.0 / radius, top));
            let rot = nalgebra::Rotation3::from_axis_angle(&Vec3::z_axis(), -angle);
            Some(scaled(verts, &(rot.matrix() * s)))
        }
    }
}

/// Octahedral-family bounds allow arbitrary linear maps commuting with the group, so the
/// match is done by recognising linear images of the octahedron or cube: a centrally
/// symmetric polytope with 6 vertices or with 6 facets.
fn octahedral_match(body: &ConvexBody3) -> Option<EqualityClass> {
    let verts = body.vertices();
    let scale = verts.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mirrored: Vec<Vec3> = verts.iter().map(|v| -v).collect();
    if hausdorff(&mirrored, verts) > MATCH_TOL * scale {
        return None;
    }
    if verts.len() == 6 {
        Some(EqualityClass::PrimalMinimizer)
    } else if body.facets().len() == 6 {
        Some(EqualityClass::DualMinimizer)
    } else {
        None
    }
}

/// Compares a body with the minimizers of its group, then falls back on the margin.
pub fn classify_minimizer(body: &ConvexBody3, kind: GroupKind, margin: Option<f64>) -> EqualityClass {
    let fallback = match margin {
        Some(m) if m > MATCH_TOL => EqualityClass::Strict,
        _ => EqualityClass::Unknown,
    };
    let Some(family) = bound_family(kind) else {
        return fallback;
    };
    if family == BoundFamily::Octahedral {
        return octahedral_match(body).unwrap_or(fallback);
    }
    let Some((primal, dual)) = minimizers(kind) else {
        return fallback;
    };
    let (Some(mine), Some(p), Some(d)) = (
        normal_form(body, family),
        normal_form(&primal, family),
        normal_form(&dual, family),
    ) else {
        return fallback;
    };
    if hausdorff(&mine, &p) < MATCH_TOL {
        EqualityClass::PrimalMinimizer
    } else if hausdorff(&mine, &d) < MATCH_TOL {
        EqualityClass::DualMinimizer
    } else {
        fallback
    }
}

/// Volume product of `body` against the bound of `kind` (if proven), with equality class.
pub fn bound_report(body: &ConvexBody3, kind: GroupKind, body_id: &str) -> Result<BoundReport> {
    let bound = proven_bound(kind).map(|b| b.value);
    let mut report = volume_product(body)?.with_bound(bound);
    report.body_id = body_id.to_string();
    report.group_name = kind.to_string();
    report.equality_class = classify_minimizer(body, kind, report.margin);
    Ok(report)
}

/// One row of the bound table.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogRow {
    pub group: String,
    pub order: usize,
    pub bound_status: BoundStatus,
    pub bound: Option<f64>,
    pub minimizers: String,
    /// Catalog group this one coincides with, for small orders.
    pub same_as: String,
}

fn same_as(kind: GroupKind) -> Option<&'static str> {
    use GroupKind::*;
    match kind {
        Ch(1) | S(1) => Some("C_1v"),
        S(3) => Some("C_3h"),
        S(5) => Some("C_5h"),
        D(1) => Some("C_2"),
        Dh(1) => Some("C_2v"),
        Dd(1) => Some("C_2h"),
        _ => None,
    }
}

/// Bound table for the axial families with `ℓ = 1..=l_max` followed by the polyhedral groups.
pub fn catalog_table(l_max: usize) -> Vec<CatalogRow> {
    let mut kinds = Vec::new();
    type Family = fn(usize) -> GroupKind;
    let families: [Family; 7] = [
        GroupKind::C,
        GroupKind::Cv,
        GroupKind::Ch,
        GroupKind::S,
        GroupKind::D,
        GroupKind::Dh,
        GroupKind::Dd,
    ];
    for family in families {
        for l in 1..=l_max {
            kinds.push(family(l));
        }
    }
    use GroupKind::*;
    kinds.extend([T, Td, Th, O, Oh, I, Ih]);
    kinds
        .into_iter()
        .map(|k| {
            let bound = proven_bound(k);
            CatalogRow {
                group: k.to_string(),
                order: k.order(),
                bound_status: if bound.is_some() { BoundStatus::Proven } else { BoundStatus::Open },
                bound: bound.as_ref().map(|b| b.value),
                minimizers: bound.map(|b| b.minimizers.join("|")).unwrap_or_default(),
                same_as: same_as(k).unwrap_or_default().to_string(),
            }
        })
        .collect()
}

/// Body from a free-form catalog name such as `"prism"` with `l`, rotated into the frame
/// of `kind` when the octahedral minimizers need it.
pub fn minimizer_in_frame(name: &str, kind: GroupKind, l: Option<usize>) -> Result<ConvexBody3> {
    let body = reference_body(name, l)?.body;
    if matches!(kind, GroupKind::S(6) | GroupKind::Dd(3)) && matches!(name, "octahedron" | "cube") {
        body.linear_image(&threefold_frame())
    } else {
        Ok(body)
    }
}
