//! Polar bodies, Santaló points and volume products.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody3, Polygon2, Vec2, Vec3};
use crate::optim::{nelder_mead, NelderMeadConfig};

/// Points closer than this to the boundary count as outside when locating the Santaló point.
pub const INTERIOR_MARGIN: f64 = 1e-9;
const MAX_RESTARTS: usize = 10;

/// Polar body `(K − z)° = {y : y·(x − z) ≤ 1 for all x ∈ K}`.
///
/// The vertices are the dual points `n / (c − n·z)` of the facets of `K`.
pub fn polar(body: &ConvexBody3, z: &Vec3) -> Result<ConvexBody3> {
    let slack = body.min_slack(z);
    if slack <= INTERIOR_MARGIN {
        return Err(Error::PointNotInterior { slack });
    }
    let duals: Vec<Vec3> = body
        .facets()
        .iter()
        .map(|f| f.normal / f.slack(z))
        .collect();
    ConvexBody3::from_points(&duals)
}

/// Planar polar `(L − z)°` in the polygon's own frame.
pub fn polar2d(poly: &Polygon2, z: &Vec2) -> Result<Polygon2> {
    poly.polar(z)
}

/// Volume of `(K − z)°`, or `+∞` when `z` is not in the shrunk interior.
///
/// Each vertex `v` of `K` contributes the cone from the origin over its dual facet, whose
/// vertices are the dual points of the facets around `v`. Bodies with incomplete facet
/// rings go through the hull of the polar instead.
pub fn polar_volume(body: &ConvexBody3, z: &Vec3) -> f64 {
    if !body.is_well_formed() {
        return polar(body, z).map_or(f64::INFINITY, |p| p.volume());
    }
    let facets = body.facets();
    let mut duals = Vec::with_capacity(facets.len());
    for f in facets {
        let s = f.slack(z);
        if s <= INTERIOR_MARGIN {
            return f64::INFINITY;
        }
        duals.push(f.normal / s);
    }
    let mut total = 0.0;
    for v in 0..body.vertices().len() {
        let ring = body.vertex_facets(v);
        let y0 = duals[ring[0]];
        let mut cone = 0.0;
        for w in ring[1..].windows(2) {
            cone += y0.dot(&duals[w[0]].cross(&duals[w[1]]));
        }
        total += cone.abs() / 6.0;
    }
    total
}

/// The interior point minimizing `|K^z|`.
pub fn santalo_point(body: &ConvexBody3) -> Result<Vec3> {
    santalo_point_in(body, &[Vec3::x(), Vec3::y(), Vec3::z()])
}

/// Minimizer of `|K^z|` over `z = c + Σ tᵢ basisᵢ`, `c` the centroid. When the body is
/// invariant under a group whose fixed points span `basis`, this is the Santaló point.
pub fn santalo_point_in(body: &ConvexBody3, basis: &[Vec3]) -> Result<Vec3> {
    let origin = body.centroid();
    if basis.is_empty() {
        return Ok(origin);
    }
    let point = |t: &[f64]| origin + basis.iter().zip(t).map(|(b, x)| b * *x).sum::<Vec3>();
    let mut start = vec![0.0; basis.len()];
    let mut best = polar_volume(body, &origin);
    let config = NelderMeadConfig {
        max_evals: 4000,
        x_tol: 1e-8,
        f_tol: 1e-12,
    };
    for _ in 0..MAX_RESTARTS {
        let at = point(&start);
        let step = 0.1 * body.min_slack(&at);
        let r = nelder_mead(|t| polar_volume(body, &point(t)), &start, step, &config);
        let found = point(&r.x);
        let moved = (found - at).norm();
        let settled = r.value >= best * (1.0 - 1e-12) && moved < 1e-7 * (1.0 + at.norm());
        if r.value < best {
            best = r.value;
            start = r.x;
        }
        if r.converged && settled {
            return Ok(point(&start));
        }
    }
    Err(Error::ConvergenceFailure {
        restarts: MAX_RESTARTS,
    })
}

/// `|K| · |K^z|`.
pub fn product_at(body: &ConvexBody3, z: &Vec3) -> f64 {
    body.volume() * polar_volume(body, z)
}

/// How a body relates to the known minimizers of its group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityClass {
    PrimalMinimizer,
    DualMinimizer,
    Strict,
    Unknown,
}

impl EqualityClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EqualityClass::PrimalMinimizer => "primal_minimizer",
            EqualityClass::DualMinimizer => "dual_minimizer",
            EqualityClass::Strict => "strict",
            EqualityClass::Unknown => "unknown",
        }
    }
}

/// Volume product of a body, optionally compared against a reference bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub body_id: String,
    pub group_name: String,
    pub volume: f64,
    pub polar_volume: f64,
    pub santalo_point: [f64; 3],
    pub product: f64,
    /// Proven lower bound for the group, if there is one.
    pub reference_bound: Option<f64>,
    /// `product − reference_bound`; absent without a bound.
    pub margin: Option<f64>,
    pub equality_class: EqualityClass,
}

impl BoundReport {
    /// Attaches a reference bound and recomputes the margin.
    pub fn with_bound(mut self, bound: Option<f64>) -> Self {
        self.reference_bound = bound;
        self.margin = bound.map(|b| self.product - b);
        self
    }

    pub fn relative_error(&self) -> Option<f64> {
        self.reference_bound
            .map(|b| (self.product - b).abs() / b.abs())
    }
}

/// Volume, polar volume at the Santaló point, and their product.
pub fn volume_product(body: &ConvexBody3) -> Result<BoundReport> {
    let z = santalo_point(body)?;
    let polar_volume = polar_volume(body, &z);
    Ok(BoundReport {
        body_id: String::new(),
        group_name: String::new(),
        volume: body.volume(),
        polar_volume,
        santalo_point: [z.x, z.y, z.z],
        product: body.volume() * polar_volume,
        reference_bound: None,
        margin: None,
        equality_class: EqualityClass::Unknown,
    })
}

/// Writes reports as CSV with a header row.
pub fn write_reports_csv<W: Write>(reports: &[BoundReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let fail = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record([
        "body_id",
        "group_name",
        "volume",
        "polar_volume",
        "santalo_x",
        "santalo_y",
        "santalo_z",
        "product",
        "reference_bound",
        "margin",
        "equality_class",
    ])
    .map_err(fail)?;
    let opt = |v: Option<f64>| v.map(|x| format!("{x:.12}")).unwrap_or_default();
    for r in reports {
        w.write_record([
            r.body_id.clone(),
            r.group_name.clone(),
            format!("{:.12}", r.volume),
            format!("{:.12}", r.polar_volume),
            format!("{:.12}", r.santalo_point[0]),
            format!("{:.12}", r.santalo_point[1]),
            format!("{:.12}", r.santalo_point[2]),
            format!("{:.12}", r.product),
            opt(r.reference_bound),
            opt(r.margin),
            r.equality_class.as_str().to_string(),
        ])
        .map_err(fail)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// Area of `(L − z)°`, or `+∞` when `z` is not in the shrunk interior.
pub fn polar_area(poly: &Polygon2, z: &Vec2) -> f64 {
    if poly.min_slack(z) <= INTERIOR_MARGIN {
        return f64::INFINITY;
    }
    poly.polar(z).map_or(f64::INFINITY, |p| p.area())
}

/// Planar Santaló point.
pub fn santalo_point_2d(poly: &Polygon2) -> Result<Vec2> {
    let verts = poly.vertices();
    let mut start = verts.iter().sum::<Vec2>() / verts.len() as f64;
    let mut best = polar_area(poly, &start);
    for _ in 0..MAX_RESTARTS {
        let step = 0.1 * poly.min_slack(&start);
        let r = nelder_mead(
            |x| polar_area(poly, &Vec2::new(x[0], x[1])),
            start.as_slice(),
            step,
            &NelderMeadConfig::default(),
        );
        let found = Vec2::new(r.x[0], r.x[1]);
        let settled = r.value >= best * (1.0 - 1e-12) && (found - start).norm() < 1e-7 * (1.0 + start.norm());
        if r.value < best {
            best = r.value;
            start = found;
        }
        if r.converged && settled {
            return Ok(start);
        }
    }
    Err(Error::ConvergenceFailure {
        restarts: MAX_RESTARTS,
    })
}

/// Planar volume product `min_z |L| |L^z|`.
pub fn volume_product_2d(poly: &Polygon2) -> Result<f64> {
    let z = santalo_point_2d(poly)?;
    Ok(poly.area() * polar_area(poly, &z))
}
