//! Incremental 3D convex hull with coplanar facet merging.

use std::collections::BTreeSet;

use super::polygon::convex_hull_2d;
use super::{dedup_points, plane_basis, Vec2, Vec3, COPLANAR_TOL, DEDUP_TOL};
use crate::error::{Error, Result};

/// Hull facet: outward unit normal, offset and the CCW (seen from outside) vertex cycle.
#[derive(Debug, Clone)]
pub(crate) struct RawFacet {
    pub normal: Vec3,
    pub offset: f64,
    pub cycle: Vec<usize>,
}

#[derive(Debug)]
pub(crate) struct RawHull {
    pub vertices: Vec<Vec3>,
    pub facets: Vec<RawFacet>,
}

#[derive(Debug, Clone, Copy)]
struct Tri {
    v: [usize; 3],
    normal: Vec3,
    offset: f64,
    area: f64,
    alive: bool,
}

impl Tri {
    fn new(pts: &[Vec3], v: [usize; 3]) -> Self {
        let cross = (pts[v[1]] - pts[v[0]]).cross(&(pts[v[2]] - pts[v[0]]));
        let area = 0.5 * cross.norm();
        let normal = if area > 0.0 { cross / (2.0 * area) } else { Vec3::zeros() };
        Tri {
            v,
            normal,
            offset: normal.dot(&pts[v[0]]),
            area,
            alive: true,
        }
    }

    fn signed_distance(&self, p: &Vec3) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

pub(crate) fn compute(input: &[Vec3]) -> Result<RawHull> {
    if input.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(Error::DegenerateInput("non-finite coordinate".into()));
    }
    let pts = dedup_points(input, DEDUP_TOL);
    if pts.len() < 4 {
        return Err(Error::DegenerateInput(format!(
            "need at least 4 distinct points, got {}",
            pts.len()
        )));
    }
    let mean = pts.iter().sum::<Vec3>() / pts.len() as f64;
    let scale = pts.iter().map(|p| (p - mean).norm()).fold(0.0, f64::max);
    let eps = COPLANAR_TOL * scale.max(f64::MIN_POSITIVE);

    let seed = initial_simplex(&pts, eps)?;
    let inner = seed.iter().map(|&i| pts[i]).sum::<Vec3>() / 4.0;

    let mut tris: Vec<Tri> = Vec::new();
    for face in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
        let mut v = [seed[face[0]], seed[face[1]], seed[face[2]]];
        let mut t = Tri::new(&pts, v);
        if t.signed_distance(&inner) > 0.0 {
            v.swap(1, 2);
            t = Tri::new(&pts, v);
        }
        tris.push(t);
    }

    // Farthest points first keeps early hulls large and later visibility tests well conditioned.
    let mut order: Vec<usize> = (0..pts.len()).filter(|i| !seed.contains(i)).collect();
    order.sort_by(|&a, &b| {
        let da = (pts[a] - inner).norm();
        let db = (pts[b] - inner).norm();
        db.total_cmp(&da)
    });

    for &p in &order {
        let point = pts[p];
        let visible: Vec<usize> = tris
            .iter()
            .enumerate()
            .filter(|(_, t)| t.alive && t.signed_distance(&point) > eps)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &f in &visible {
            let v = tris[f].v;
            for k in 0..3 {
                edges.insert((v[k], v[(k + 1) % 3]));
            }
        }
        for &f in &visible {
            tris[f].alive = false;
        }
        let horizon: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(a, b)| !edges.contains(&(*b, *a)))
            .copied()
            .collect();
        for (a, b) in horizon {
            tris.push(Tri::new(&pts, [a, b, p]));
        }
    }

    let mut live: Vec<Tri> = tris.into_iter().filter(|t| t.alive && t.area > 0.0).collect();
    live.sort_by(|a, b| b.area.total_cmp(&a.area));

    // Group triangles lying in a common supporting plane.
    let merge_tol = 10.0 * eps.max(DEDUP_TOL * 1e-3);
    let mut groups: Vec<(Vec3, f64, Vec<usize>)> = Vec::new();
    for t in &live {
        let slot = groups.iter_mut().find(|(n, c, _)| {
            n.dot(&t.normal) > 0.5
                && t.v.iter().all(|&i| (n.dot(&pts[i]) - *c).abs() <= merge_tol)
        });
        match slot {
            Some((_, _, members)) => members.extend_from_slice(&t.v),
            None => groups.push((t.normal, t.offset, t.v.to_vec())),
        }
    }

    let mut used: Vec<Option<usize>> = vec![None; pts.len()];
    let mut vertices: Vec<Vec3> = Vec::new();
    let mut facets = Vec::with_capacity(groups.len());
    for (normal, _, mut members) in groups {
        members.sort_unstable();
        members.dedup();
        let (e1, e2) = plane_basis(&normal);
        let planar: Vec<Vec2> = members
            .iter()
            .map(|&i| Vec2::new(pts[i].dot(&e1), pts[i].dot(&e2)))
            .collect();
        let ring = convex_hull_2d(&planar);
        if ring.len() < 3 {
            continue;
        }
        let cycle_pts: Vec<usize> = ring.iter().map(|&k| members[k]).collect();
        let mut newell = Vec3::zeros();
        for k in 0..cycle_pts.len() {
            let a = pts[cycle_pts[k]];
            let b = pts[cycle_pts[(k + 1) % cycle_pts.len()]];
            newell += a.cross(&b);
        }
        let n = newell.normalize();
        let offset =
            cycle_pts.iter().map(|&i| n.dot(&pts[i])).sum::<f64>() / cycle_pts.len() as f64;
        let cycle = cycle_pts
            .iter()
            .map(|&i| {
                *used[i].get_or_insert_with(|| {
                    vertices.push(pts[i]);
                    vertices.len() - 1
                })
            })
            .collect();
        facets.push(RawFacet {
            normal: n,
            offset,
            cycle,
        });
    }
    if facets.len() < 4 {
        return Err(Error::DegenerateInput("hull collapsed to fewer than 4 facets".into()));
    }
    Ok(RawHull { vertices, facets })
}

fn initial_simplex(pts: &[Vec3], eps: f64) -> Result<[usize; 4]> {
    let i0 = (0..pts.len())
        .min_by(|&a, &b| pts[a].x.total_cmp(&pts[b].x))
        .unwrap();
    let i1 = argmax(pts, |p| (p - pts[i0]).norm());
    let dir = (pts[i1] - pts[i0]).normalize();
    let line_dist = |p: &Vec3| {
        let d = p - pts[i0];
        (d - dir * d.dot(&dir)).norm()
    };
    let i2 = argmax(pts, line_dist);
    if line_dist(&pts[i2]) <= eps {
        return Err(Error::DegenerateInput("points are collinear".into()));
    }
    let normal = (pts[i1] - pts[i0]).cross(&(pts[i2] - pts[i0])).normalize();
    let plane_dist = |p: &Vec3| normal.dot(&(p - pts[i0])).abs();
    let i3 = argmax(pts, plane_dist);
    if plane_dist(&pts[i3]) <= eps {
        return Err(Error::DegenerateInput("points are coplanar".into()));
    }
    Ok([i0, i1, i2, i3])
}

fn argmax(pts: &[Vec3], f: impl Fn(&Vec3) -> f64) -> usize {
    (0..pts.len())
        .max_by(|&a, &b| f(&pts[a]).total_cmp(&f(&pts[b])))
        .unwrap()
}
