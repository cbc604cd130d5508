//! Derivative-free minimization of the volume product over symmetric families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bodies::{bound_report, golden_ratio, proven_bound};
use crate::error::{Error, Result};
use crate::geometry::{plane_basis, ConvexBody3, Mat3, Vec3};
use crate::optim::{nelder_mead, NelderMeadConfig};
use crate::polarity::{polar_volume, santalo_point_in, EqualityClass};
use crate::symmetry::{is_invariant, symmetrize, GroupKind, PointGroup};

/// Largest number of seed directions a family may carry.
pub const MAX_DIRECTIONS: usize = 12;
/// Log-radii saturate at `±LOG_RADIUS_CAP`; the product is scale invariant, so this
/// only bounds the ratio between orbits and keeps hulls well conditioned.
pub const LOG_RADIUS_CAP: f64 = 3.0;

/// Bodies `symmetrize(group, {rᵢ dᵢ})` where each direction `dᵢ` tilts away from its
/// seed by less than `cap` radians.
///
/// Parameters are `k` log-radii followed by `k` pairs of tangent-plane offsets.
#[derive(Debug, Clone)]
pub struct InvariantFamily {
    pub group: PointGroup,
    pub kind: Option<GroupKind>,
    pub seed_directions: Vec<Vec3>,
    pub cap: f64,
}

impl InvariantFamily {
    pub fn new(group: PointGroup, seed_directions: Vec<Vec3>, cap: f64) -> Result<InvariantFamily> {
        if seed_directions.is_empty() || seed_directions.len() > MAX_DIRECTIONS {
            return Err(Error::DegenerateInput(format!(
                "need between 1 and {MAX_DIRECTIONS} seed directions"
            )));
        }
        let mut dirs = Vec::with_capacity(seed_directions.len());
        for d in seed_directions {
            let n = d.norm();
            if n <= 1e-12 {
                return Err(Error::ZeroDirection);
            }
            dirs.push(d / n);
        }
        Ok(InvariantFamily {
            kind: group.kind,
            group,
            seed_directions: dirs,
            cap,
        })
    }

    /// Family for a catalog group with `k` default seed directions: a canonical anchor
    /// of the group's minimizer followed by points of a golden-angle spiral.
    pub fn for_group(kind: GroupKind, k: usize) -> Result<InvariantFamily> {
        if k == 0 || k > MAX_DIRECTIONS {
            return Err(Error::DegenerateInput(format!("k must be in 1..={MAX_DIRECTIONS}")));
        }
        let phi = golden_ratio();
        let anchor = match kind {
            GroupKind::T | GroupKind::Td | GroupKind::Th => Vec3::new(1.0, 1.0, 1.0),
            GroupKind::O | GroupKind::Oh => Vec3::x(),
            GroupKind::I | GroupKind::Ih => Vec3::new(0.0, 1.0, phi),
            _ => Vec3::new(1.0, 0.0, 1.0),
        };
        let mut dirs = vec![anchor.normalize()];
        let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        for i in 1..k {
            let z = 1.0 - 2.0 * (i as f64 - 0.5) / (k as f64 - 0.5).max(1.0);
            let r = (1.0 - z * z).max(0.0).sqrt();
            let t = golden_angle * i as f64 + 0.3;
            dirs.push(Vec3::new(r * t.cos(), r * t.sin(), z));
        }
        InvariantFamily::new(kind.group(), dirs, 0.35)
    }

    pub fn k(&self) -> usize {
        self.seed_directions.len()
    }

    pub fn dim(&self) -> usize {
        3 * self.k()
    }

    /// Points whose orbit spans the body for the given parameters.
    pub fn seeds(&self, params: &[f64]) -> Result<Vec<Vec3>> {
        let k = self.k();
        if params.len() != 3 * k {
            return Err(Error::DegenerateInput(format!(
                "expected {} parameters, got {}",
                3 * k,
                params.len()
            )));
        }
        let limit = self.cap.tan();
        Ok(self
            .seed_directions
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let (e1, e2) = plane_basis(d);
                // Smooth saturation keeps the objective free of flat plateaus.
                let mut t = e1 * params[k + 2 * i] + e2 * params[k + 2 * i + 1];
                let n = t.norm();
                if n > 0.0 {
                    t *= limit * (n / limit).tanh() / n;
                }
                let log_r = LOG_RADIUS_CAP * (params[i] / LOG_RADIUS_CAP).tanh();
                (d + t).normalize() * log_r.exp()
            })
            .collect())
    }

    /// The invariant body for `params`. Nearly coincident orbit points can make the hull
    /// drop part of an orbit; such bodies are rejected rather than returned asymmetric.
    pub fn body(&self, params: &[f64]) -> Result<ConvexBody3> {
        let body = symmetrize(&self.group, &self.seeds(params)?)?;
        if !is_invariant(&self.group, &body, 1e-9) {
            return Err(Error::NotInvariant(self.group.name.clone()));
        }
        Ok(body)
    }
}

/// Orthonormal basis of the subspace fixed by every element of the group.
pub fn fixed_subspace(group: &PointGroup) -> Vec<Vec3> {
    // The group average is the orthogonal projection onto the fixed subspace.
    let p = group.elements.iter().sum::<Mat3>() / group.order() as f64;
    let eig = p.symmetric_eigen();
    (0..3)
        .filter(|&i| eig.eigenvalues[i] > 0.5)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect()
}

/// Volume product of a body invariant under `group`. The Santaló point is fixed by the
/// group, so the search runs inside the fixed subspace only.
pub fn invariant_product(body: &ConvexBody3, group: &PointGroup) -> Result<f64> {
    let basis = fixed_subspace(group);
    let z = if basis.is_empty() {
        Vec3::zeros()
    } else {
        santalo_point_in(body, &basis)?
    };
    let v = polar_volume(body, &z);
    if !v.is_finite() {
        return Err(Error::OriginNotInterior);
    }
    Ok(body.volume() * v)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Evaluations per restart.
    pub max_evals: usize,
    pub restarts: usize,
    /// Initial simplex size, also the spread of random restart points.
    pub perturbation: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_evals: 2000,
            restarts: 8,
            perturbation: 0.2,
            seed: 0,
        }
    }
}

/// One objective evaluation, kept for the optional trace output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub restart: usize,
    pub evaluation: usize,
    pub product: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub group: String,
    pub k: usize,
    pub seed: u64,
    pub best_params: Vec<f64>,
    pub best_product: f64,
    pub best_vertices: Vec<[f64; 3]>,
    pub evaluations: usize,
    /// Evaluations whose body was degenerate; they score `+∞`.
    pub failures: usize,
    pub restarts: usize,
    /// `"proven"` when the group has a known lower bound, `"open"` otherwise.
    pub bound_status: String,
    pub reference_bound: Option<f64>,
    pub margin: Option<f64>,
    pub classified: EqualityClass,
    #[serde(skip)]
    pub trace: Vec<TracePoint>,
}

struct RestartOutcome {
    params: Vec<f64>,
    value: f64,
    evals: usize,
    failures: usize,
    trace: Vec<TracePoint>,
}

fn run_restart(family: &InvariantFamily, config: &SearchConfig, restart: usize) -> RestartOutcome {
    let dim = family.dim();
    let k = family.k();
    let x0: Vec<f64> = if restart == 0 {
        vec![0.0; dim]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(restart as u64));
        (0..dim)
            .map(|i| {
                let spread = if i < k { 0.5 } else { family.cap };
                rng.gen_range(-spread..spread)
            })
            .collect()
    };
    let mut trace = Vec::new();
    let mut failures = 0;
    let nm = NelderMeadConfig {
        max_evals: config.max_evals,
        x_tol: 1e-9,
        f_tol: 1e-13,
    };
    let result = nelder_mead(
        |p| {
            let value = family
                .body(p)
                .and_then(|b| invariant_product(&b, &family.group))
                .unwrap_or(f64::INFINITY);
            if !value.is_finite() {
                failures += 1;
            }
            trace.push(TracePoint {
                restart,
                evaluation: trace.len(),
                product: value,
            });
            value
        },
        &x0,
        config.perturbation,
        &nm,
    );
    RestartOutcome {
        params: result.x,
        value: result.value,
        evals: result.evals,
        failures,
        trace,
    }
}

/// Nelder–Mead with random restarts (run in parallel); deterministic for a fixed seed.
pub fn minimize_product(family: &InvariantFamily, config: &SearchConfig) -> Result<SearchResult> {
    let restarts = config.restarts.max(1);
    let outcomes: Vec<RestartOutcome> = (0..restarts)
        .into_par_iter()
        .map(|r| run_restart(family, config, r))
        .collect();
    let best = outcomes
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("at least one restart");
    let group = family
        .kind
        .map_or_else(|| family.group.name.clone(), |k| k.to_string());
    let body = family.body(&best.params).ok().filter(|_| best.value.is_finite());
    let bound = family.kind.and_then(proven_bound).map(|b| b.value);
    let classified = match (family.kind, &body, bound) {
        (Some(kind), Some(b), Some(_)) => bound_report(b, kind, "")
            .map(|r| r.equality_class)
            .unwrap_or(EqualityClass::Unknown),
        _ => EqualityClass::Unknown,
    };
    Ok(SearchResult {
        group,
        k: family.k(),
        seed: config.seed,
        best_params: best.params.clone(),
        best_product: best.value,
        best_vertices: body
            .map(|b| b.vertices().iter().map(|v| [v.x, v.y, v.z]).collect())
            .unwrap_or_default(),
        evaluations: outcomes.iter().map(|o| o.evals).sum(),
        failures: outcomes.iter().map(|o| o.failures).sum(),
        restarts,
        bound_status: if bound.is_some() { "proven" } else { "open" }.to_string(),
        reference_bound: bound,
        margin: bound.map(|b| best.value - b),
        classified,
        trace: outcomes.into_iter().flat_map(|o| o.trace).collect(),
    })
}

/// One vertex from each orbit of the group acting on the vertices.
fn orbit_representatives(body: &ConvexBody3, group: &PointGroup) -> Vec<Vec3> {
    let mut reps: Vec<Vec3> = Vec::new();
    let mut covered: Vec<Vec3> = Vec::new();
    for v in body.vertices() {
        if covered.iter().any(|c| (c - v).norm() <= 1e-9 * (1.0 + v.norm())) {
            continue;
        }
        reps.push(*v);
        covered.extend(group.elements.iter().map(|g| g * v));
    }
    reps
}

/// Smallest `P(K') − P(K)` over random invariant perturbations `K'` of `body`: each orbit
/// representative moves by at most `eps` times its length before re-symmetrizing.
pub fn certify_local_min(body: &ConvexBody3, kind: GroupKind, eps: f64, trials: usize, seed: u64) -> Result<f64> {
    let group = kind.group();
    let base = invariant_product(body, &group)?;
    let reps = orbit_representatives(body, &group);
    let margins: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let moved: Vec<Vec3> = reps
                .iter()
                .map(|r| {
                    // Uniform in the unit ball by rejection.
                    let u = loop {
                        let u = Vec3::new(
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                        );
                        if u.norm_squared() <= 1.0 {
                            break u;
                        }
                    };
                    r + u * (eps * r.norm())
                })
                .collect();
            symmetrize(&group, &moved)
                .and_then(|b| invariant_product(&b, &group))
                .map_or(f64::INFINITY, |p| p - base)
        })
        .collect();
    Ok(margins.into_iter().fold(f64::INFINITY, f64::min))
}
