//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use mahlerlab::bodies::{bound_family, minimizers, octahedron, icosahedron, prism, simplex};
use mahlerlab::geometry::{axis_rotation, hausdorff, plane_basis};
use mahlerlab::polarity::{polar, volume_product, volume_product_2d, EqualityClass};
use mahlerlab::search::certify_local_min;
use mahlerlab::sections::{check_lemma1, check_lemma2, classify_equality, planar_body, EqualityCase, SectorPair};
use mahlerlab::signed_volume::{check_lemma4, check_lemma7, curve, curve_vector, group_bound_check};
use mahlerlab::{convex_hull_3d, ConvexBody3, Error, GroupKind, Mat3, Polygon2, Vec2, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

fn random_body(rng: &mut ChaCha8Rng) -> ConvexBody3 {
    loop {
        let n = rng.gen_range(8..16);
        let pts: Vec<Vec3> = (0..n).map(|_| unit(rng) * rng.gen_range(0.5..1.5)).collect();
        if let Ok(b) = convex_hull_3d(&pts) {
            if b.origin_interior() && b.min_slack(&Vec3::zeros()) > 0.05 {
                return b;
            }
        }
    }
}

fn random_rotation(rng: &mut ChaCha8Rng) -> Mat3 {
    axis_rotation(&unit(rng), rng.gen_range(-PI..PI))
}

/// Closed triangle of boundary points around a random direction, in random orientation.
fn random_triangle(rng: &mut ChaCha8Rng, body: &ConvexBody3) -> Vec<Vec3> {
    let center = unit(rng);
    let (e1, e2) = plane_basis(&center);
    let spread = rng.gen_range(0.1..0.6);
    let phase = rng.gen_range(0.0..TAU);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let mut pts: Vec<Vec3> = (0..3)
        .map(|k| {
            let a = phase + sign * TAU * k as f64 / 3.0;
            body.radial_point(&(center + (e1 * a.cos() + e2 * a.sin()) * spread)).unwrap()
        })
        .collect();
    pts.push(pts[0]);
    pts
}

/// Random point of the body: a random convex combination of vertices.
fn random_inner_point(rng: &mut ChaCha8Rng, body: &ConvexBody3) -> Vec3 {
    let w: Vec<f64> = body.vertices().iter().map(|_| rng.gen_range(0.0..1.0f64).powi(4)).collect();
    let total: f64 = w.iter().sum();
    body.vertices().iter().zip(&w).map(|(v, wi)| v * (wi / total)).sum()
}

fn random_cyclic_polygon(rng: &mut ChaCha8Rng, l: usize) -> Polygon2 {
    loop {
        let seeds = rng.gen_range(1..4);
        let mut pts = Vec::new();
        for _ in 0..seeds {
            let r = rng.gen_range(0.3..1.5);
            let t = rng.gen_range(0.0..TAU);
            for k in 0..l {
                let a = t + TAU * k as f64 / l as f64;
                pts.push(Vec2::new(r * a.cos(), r * a.sin()));
            }
        }
        if let Ok(p) = Polygon2::hull((Vec3::x(), Vec3::y()), &pts) {
            return p;
        }
    }
}

fn prism_bound(l: usize) -> f64 {
    let l = l as f64;
    2.0 * l * l / 3.0 * (1.0 - (TAU / l).cos())
}

fn criterion_bound_table() -> Outcome {
    let rows = mahlerlab_cli::bound_table(8).expect("table builds");
    // Independent closed forms for every row.
    let expected = |body: &str| -> f64 {
        match body {
            "simplex" | "simplex_polar" => 64.0 / 9.0,
            "octahedron" | "cube" => 32.0 / 3.0,
            "icosahedron" | "dodecahedron" => 80.0 / 3.0 * (5.0 - 2.0 * 5f64.sqrt()),
            b if b.starts_with("hanner") => 32.0 / 3.0,
            b => prism_bound(b.rsplit('_').next().unwrap().parse().unwrap()),
        }
    };
    let mut worst: f64 = 0.0;
    for r in &rows {
        worst = worst.max((r.product - expected(&r.body)).abs() / expected(&r.body));
    }
    let prisms = (3..=8).all(|l| rows.iter().any(|r| r.body == format!("prism_{l}")));
    Outcome {
        pass: worst <= 1e-8 && prisms && rows.len() == 20,
        detail: format!("{} rows, max relative error {worst:.1e}", rows.len()),
    }
}

fn criterion_planar(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst_regular: f64 = 0.0;
    for l in 3..=12 {
        let p = volume_product_2d(&Polygon2::regular(l, 1.0, rng.gen_range(0.0..1.0)).unwrap()).unwrap();
        let s = (PI / l as f64).sin();
        worst_regular = worst_regular.max((p - (l * l) as f64 * s * s).abs());
    }
    let tri = volume_product_2d(&planar_body("triangle", None).unwrap()).unwrap();
    let square = volume_product_2d(&planar_body("square", None).unwrap()).unwrap();
    let anchors = (tri - 27.0 / 4.0).abs() < 1e-9 && (square - 8.0).abs() < 1e-9;
    let mut worst_margin = f64::INFINITY;
    for l in [3usize, 5, 8] {
        let s = (PI / l as f64).sin();
        let bound = (l * l) as f64 * s * s;
        for _ in 0..200 {
            let poly = random_cyclic_polygon(rng, l);
            worst_margin = worst_margin.min(volume_product_2d(&poly).unwrap() - bound);
        }
    }
    Outcome {
        pass: worst_regular < 1e-9 && anchors && worst_margin >= -1e-6,
        detail: format!(
            "regular l=3..12 max error {worst_regular:.1e}; 600 random C_l polygons, min margin {worst_margin:.3e}"
        ),
    }
}

fn criterion_lemmas(rng: &mut ChaCha8Rng) -> Outcome {
    // Sector product against the test-point bound.
    let (mut l1_min, mut l1_trials, mut l1_skipped) = (f64::INFINITY, 0, 0);
    while l1_trials < 1000 {
        let body = random_body(rng);
        let (d1, d2) = (unit(rng), unit(rng));
        if d1.cross(&d2).norm() < 0.05 || d1.dot(&d2) < -0.95 {
            continue;
        }
        let a = body.radial_point(&d1).unwrap();
        let b = body.radial_point(&d2).unwrap();
        match SectorPair::projected(&body, &a, &b) {
            Ok(pair) => {
                l1_min = l1_min.min(check_lemma1(&pair));
                l1_trials += 1;
            }
            // Both points on one edge: the dual sector is empty.
            Err(Error::BadAngle(_)) => l1_skipped += 1,
            Err(e) => panic!("sector pair failed: {e}"),
        }
    }
    // Rotation bound on invariant polygons, where b = R a and b° = R a° hold.
    let mut l2_min = f64::INFINITY;
    for _ in 0..1000 {
        let l = rng.gen_range(3..9);
        let poly = random_cyclic_polygon(rng, l);
        let k = rng.gen_range(1..=(l - 1) / 2);
        let pair = SectorPair::from_angles(&poly, rng.gen_range(0.0..TAU), TAU * k as f64 / l as f64).unwrap();
        l2_min = l2_min.min(check_lemma2(&pair, 1e-6).unwrap());
    }
    // Signed volume estimate.
    let mut l4_min = f64::INFINITY;
    for _ in 0..1000 {
        let body = random_body(rng);
        let c = curve(&body, &random_triangle(rng, &body), 8).unwrap();
        let x = random_inner_point(rng, &body);
        let scale = body.volume().max(1.0);
        l4_min = l4_min.min(check_lemma4(&body, &c, &x).unwrap() / scale);
    }
    // Patch product against the curve vector product.
    let (mut l7_min, mut l7_trials, mut l7_skipped) = (f64::INFINITY, 0, 0);
    while l7_trials < 200 {
        let body = random_body(rng);
        let c = curve(&body, &random_triangle(rng, &body), 8).unwrap();
        match check_lemma7(&body, &c) {
            Ok((lhs, rhs)) => {
                l7_min = l7_min.min(lhs - rhs);
                l7_trials += 1;
            }
            Err(_) => l7_skipped += 1,
        }
    }
    Outcome {
        pass: l1_min >= -1e-9 && l2_min >= -1e-9 && l4_min >= -1e-8 && l7_min >= -1e-6,
        detail: format!(
            "sector {l1_min:.2e} ({l1_trials} trials, {l1_skipped} degenerate skipped); rotation {l2_min:.2e} (1000); \
             signed volume {l4_min:.2e} (1000); patch product {l7_min:.2e} ({l7_trials} trials, {l7_skipped} skipped)"
        ),
    }
}

fn proven_kinds() -> Vec<GroupKind> {
    use GroupKind::*;
    let mut kinds = vec![T, Td, Th, O, Oh, I, Ih, S(2), S(6), Ch(2), Dh(2), Dd(3), Dd(1)];
    for l in 3..=8 {
        kinds.extend([Ch(l), D(l), Dh(l)]);
    }
    kinds.extend([S(3), S(5), S(7)]);
    kinds
}

fn criterion_equality() -> Outcome {
    let case = |name: &str| {
        let poly = planar_body(name, None).unwrap();
        classify_equality(&SectorPair::from_angles(&poly, 0.0, PI / 2.0).unwrap(), 1e-9).unwrap()
    };
    let cases_ok = case("square") == EqualityCase::CaseI && case("diamond") == EqualityCase::CaseII;
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for kind in proven_kinds() {
        assert!(bound_family(kind).is_some());
        let (primal, dual) = minimizers(kind).unwrap();
        for (body, expected) in [(primal, EqualityClass::PrimalMinimizer), (dual, EqualityClass::DualMinimizer)] {
            let check = group_bound_check(&body, kind).unwrap();
            let margin = check.report.margin.unwrap();
            worst = worst.max(margin.abs());
            checked += 1;
            if margin.abs() >= 1e-8 || check.report.equality_class != expected || !check.all_hold() {
                failures.push(format!("{kind}:{:?}", check.report.equality_class));
            }
        }
    }
    Outcome {
        pass: cases_ok && failures.is_empty(),
        detail: format!(
            "square/diamond cases {}; {checked} minimizer checks, max |margin| {worst:.1e}{}",
            if cases_ok { "ok" } else { "wrong" },
            if failures.is_empty() { String::new() } else { format!(", failing: {}", failures.join(" ")) }
        ),
    }
}

fn criterion_certify() -> Outcome {
    let cases = [
        ("simplex", simplex(), GroupKind::T),
        ("octahedron", octahedron(), GroupKind::O),
        ("icosahedron", icosahedron(), GroupKind::I),
        ("prism_6", prism(6).unwrap(), GroupKind::Ch(6)),
        ("prism_6", prism(6).unwrap(), GroupKind::D(6)),
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, body, kind) in cases {
        let m = certify_local_min(&body, kind, 0.05, 200, 2024).unwrap();
        pass &= m >= -1e-6;
        parts.push(format!("{name}/{kind} {m:.2e}"));
    }
    Outcome {
        pass,
        detail: parts.join(", "),
    }
}

fn criterion_structure(rng: &mut ChaCha8Rng) -> Outcome {
    let mut bad = Vec::new();
    let o = Vec3::zeros();
    for _ in 0..100 {
        let b = random_body(rng);
        let twice = polar(&polar(&b, &o).unwrap(), &o).unwrap();
        if hausdorff(twice.vertices(), b.vertices()) >= 1e-9 {
            bad.push("bipolar");
        }
    }
    for _ in 0..100 {
        let b = random_body(rng);
        let mut pts = b.vertices().to_vec();
        pts.push(unit(rng) * 2.0);
        let bigger = convex_hull_3d(&pts).unwrap();
        let (outer, inner) = (polar(&b, &o).unwrap(), polar(&bigger, &o).unwrap());
        if !inner.vertices().iter().all(|v| outer.contains(v, 1e-9)) {
            bad.push("inclusion");
        }
    }
    let kinds = proven_kinds()
        .into_iter()
        .chain([GroupKind::C(5), GroupKind::Cv(3), GroupKind::S(4), GroupKind::Dd(2), GroupKind::C(1)])
        .collect::<Vec<_>>();
    for i in 0..100 {
        let kind = kinds[i % kinds.len()];
        let g = kind.group().conjugate(&random_rotation(rng)).unwrap();
        let expected = match kind {
            GroupKind::C(l) => l,
            GroupKind::Ch(l) | GroupKind::Cv(l) | GroupKind::D(l) => 2 * l,
            GroupKind::Dd(l) | GroupKind::Dh(l) => 4 * l,
            GroupKind::S(n) if n % 2 == 0 => n,
            GroupKind::S(n) => 2 * n,
            GroupKind::T => 12,
            GroupKind::Td | GroupKind::Th | GroupKind::O => 24,
            GroupKind::Oh => 48,
            GroupKind::I => 60,
            GroupKind::Ih => 120,
        };
        let closed = g.elements.iter().all(|a| g.elements.iter().all(|b| g.contains(&(a * b))));
        if g.order() != expected || !closed {
            bad.push("group order");
        }
    }
    for _ in 0..100 {
        let b = random_body(rng);
        let m = loop {
            let m = Mat3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
            if m.determinant().abs() > 0.3 {
                break m;
            }
        };
        let t = unit(rng) * rng.gen_range(0.0..2.0);
        let p = volume_product(&b).unwrap().product;
        let q = volume_product(&b.affine_image(&m, &t).unwrap()).unwrap().product;
        if (p - q).abs() >= 1e-8 * p {
            bad.push("affine");
        }
    }
    for _ in 0..100 {
        let b = random_body(rng);
        let c = curve(&b, &random_triangle(rng, &b), 8).unwrap();
        let v = curve_vector(&c);
        let flip = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let g = random_rotation(rng) * flip;
        let moved = curve_vector(&c.transformed(&g));
        if (curve_vector(&c.reversed()) + v).norm() >= 1e-12 || (moved - g * v * g.determinant()).norm() >= 1e-12 {
            bad.push("curve vector");
        }
    }
    bad.dedup();
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "bipolar, inclusion, group orders, affine invariance, curve vector: 100 instances each".into()
        } else {
            format!("violations in {}", bad.join(", "))
        },
    }
}

fn criterion_open_groups() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for group in ["C_5", "C_3v", "S_4", "D_2d"] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let args = [
            "mahlerlab", "search", "--group", group, "--k", "2", "--budget", "150", "--restarts", "2", "--seed", "11",
        ];
        let code = mahlerlab_cli::run(args, &mut out, &mut err);
        let text = String::from_utf8(out).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap_or_default();
        let ok = code == 0
            && !text.contains("proven")
            && value["bound_status"] == "open"
            && value["reference_bound"].is_null();
        pass &= ok;
        parts.push(format!("{group} {:.4}", value["best_product"].as_f64().unwrap_or(f64::NAN)));
    }
    Outcome {
        pass,
        detail: format!("logged without bound claims: {}", parts.join(", ")),
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    type Criterion<'a> = (&'a str, Option<Duration>, Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        ("bound table", Some(Duration::from_secs(10)), Box::new(|_| criterion_bound_table())),
        ("planar bound", Some(Duration::from_secs(60)), Box::new(criterion_planar)),
        ("lemma suite", None, Box::new(criterion_lemmas)),
        ("equality cases", None, Box::new(|_| criterion_equality())),
        ("local minimality", Some(Duration::from_secs(300)), Box::new(|_| criterion_certify())),
        ("structural properties", None, Box::new(criterion_structure)),
        ("open groups", None, Box::new(|_| criterion_open_groups())),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&mut rng);
        let elapsed = start.elapsed();
        let in_time = limit.map_or(true, |l| elapsed <= l);
        let pass = outcome.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = limit.map(|l| format!(" of {}s", l.as_secs())).unwrap_or_default();
        println!(
            "criterion {} {name}: {} [{}; {:.2}s{budget}]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
