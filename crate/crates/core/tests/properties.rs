use mahlerlab::geometry::{axis_rotation, hausdorff};
use mahlerlab::polarity::{polar, polar_volume, santalo_point, volume_product};
use mahlerlab::sections::{check_lemma1, check_lemma2, SectorPair};
use mahlerlab::signed_volume::{check_lemma4, curve, curve_vector, BoundaryCurve};
use mahlerlab::symmetry::{is_invariant, symmetrize};
use mahlerlab::{convex_hull_3d, ConvexBody3, GroupKind, Mat3, Polygon2, Vec2, Vec3};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Vec3> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, 0.5..1.5f64).prop_filter_map("zero direction", |(x, y, z, r)| {
        let d = Vec3::new(x, y, z);
        (d.norm() > 0.1).then(|| d.normalize() * r)
    })
}

fn body() -> impl Strategy<Value = ConvexBody3> {
    prop::collection::vec(point(), 8..16).prop_filter_map("degenerate hull", |pts| {
        convex_hull_3d(&pts)
            .ok()
            .filter(|b| b.origin_interior() && b.min_slack(&Vec3::zeros()) > 0.05)
    })
}

fn direction() -> impl Strategy<Value = Vec3> {
    point().prop_map(|p| p.normalize())
}

fn rotation() -> impl Strategy<Value = Mat3> {
    (direction(), -3.0..3.0f64).prop_map(|(axis, angle)| axis_rotation(&axis, angle))
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(100)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn hull_is_idempotent(b in body()) {
        let again = convex_hull_3d(b.vertices()).unwrap();
        prop_assert_eq!(again.vertices().len(), b.vertices().len());
        prop_assert!(hausdorff(again.vertices(), b.vertices()) < 1e-9);
    }

    #[test]
    fn volume_does_not_depend_on_apex(b in body(), t in 0.0..1.0f64) {
        let apex = b.centroid() * t;
        prop_assert!((b.volume_from_apex(&apex) - b.volume()).abs() < 1e-12 * b.volume().max(1.0));
    }

    #[test]
    fn gauge_is_positively_homogeneous(b in body(), d in direction(), t in 0.1..10.0f64) {
        let g = b.gauge(&d).unwrap();
        prop_assert!((b.gauge(&(d * t)).unwrap() - t * g).abs() < 1e-12 * t * g);
    }

    #[test]
    fn radial_point_is_on_the_boundary(b in body(), d in direction()) {
        let r = b.radial_point(&d).unwrap();
        prop_assert!(b.contains(&(r * (1.0 - 1e-6)), 0.0));
        prop_assert!(!b.contains(&(r * (1.0 + 1e-3)), 1e-9));
    }

    #[test]
    fn volume_is_rotation_invariant(b in body(), g in rotation()) {
        let moved = b.linear_image(&g).unwrap();
        prop_assert!((moved.volume() - b.volume()).abs() < 1e-12 * b.volume().max(1.0));
    }

    #[test]
    fn polar_is_an_involution(b in body()) {
        let twice = polar(&polar(&b, &Vec3::zeros()).unwrap(), &Vec3::zeros()).unwrap();
        prop_assert!(hausdorff(twice.vertices(), b.vertices()) < 1e-9);
    }

    #[test]
    fn polar_reverses_inclusion(b in body(), extra in prop::collection::vec(point(), 1..4)) {
        let mut pts = b.vertices().to_vec();
        pts.extend(extra.iter().map(|p| p * 1.3));
        let bigger = convex_hull_3d(&pts).unwrap();
        let small_polar = polar(&bigger, &Vec3::zeros()).unwrap();
        let big_polar = polar(&b, &Vec3::zeros()).unwrap();
        for v in small_polar.vertices() {
            prop_assert!(big_polar.contains(v, 1e-9));
        }
    }

    #[test]
    fn fast_polar_volume_matches_polar_hull(b in body()) {
        let z = b.centroid() * 0.5;
        let exact = polar(&b, &z).unwrap().volume();
        prop_assert!((polar_volume(&b, &z) - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn product_is_affine_invariant(
        b in body(),
        entries in prop::array::uniform9(-0.4..0.4f64),
        t in point(),
    ) {
        let m = Mat3::identity() + Mat3::from_row_slice(&entries);
        prop_assume!(m.determinant().abs() > 0.2);
        let p = volume_product(&b).unwrap().product;
        let q = volume_product(&b.affine_image(&m, &t).unwrap()).unwrap().product;
        prop_assert!((p - q).abs() < 1e-8 * p, "{} vs {}", p, q);
    }

    #[test]
    fn santalo_point_is_a_minimum(b in body(), d in direction()) {
        let z = santalo_point(&b).unwrap();
        let best = polar_volume(&b, &z);
        let step = 0.01 * b.min_slack(&z);
        prop_assert!(polar_volume(&b, &(z + d * step)) >= best * (1.0 - 1e-12));
    }

    #[test]
    fn product_is_below_the_ball(b in body()) {
        let ball = (4.0 * std::f64::consts::PI / 3.0).powi(2);
        let p = volume_product(&b).unwrap().product;
        prop_assert!(p <= ball && p >= 64.0 / 9.0 - 1e-9);
    }

    #[test]
    fn symmetrized_bodies_are_invariant(pts in prop::collection::vec(point(), 1..3), which in 0usize..6) {
        let kind = [GroupKind::T, GroupKind::O, GroupKind::Ch(5), GroupKind::D(3), GroupKind::Dd(2), GroupKind::S(4)][which];
        let group = kind.group();
        prop_assume!(symmetrize(&group, &pts).is_ok());
        let b = symmetrize(&group, &pts).unwrap();
        prop_assert!(is_invariant(&group, &b, 1e-9));
        if b.origin_interior() {
            prop_assert!(is_invariant(&group, &polar(&b, &Vec3::zeros()).unwrap(), 1e-9));
        }
    }

    #[test]
    fn sector_lemma_holds(b in body(), d1 in direction(), d2 in direction()) {
        prop_assume!(d1.cross(&d2).norm() > 0.05 && d1.dot(&d2) > -0.95);
        let a = b.radial_point(&d1).unwrap();
        let c = b.radial_point(&d2).unwrap();
        // Both points on one edge give coinciding dual points and an empty dual sector.
        let pair = SectorPair::projected(&b, &a, &c);
        prop_assume!(!matches!(pair, Err(mahlerlab::Error::BadAngle(_))));
        let pair = pair.unwrap();
        prop_assert!(check_lemma1(&pair) >= -1e-9);
    }

    #[test]
    fn rotation_sector_lemma_holds(n in 3usize..9, phase in 0.0..1.0f64, scale in 0.5..2.0f64, k in 1usize..3) {
        let poly = Polygon2::regular(n, scale, phase).unwrap();
        let xi = std::f64::consts::TAU * k as f64 / n as f64;
        prop_assume!(xi < std::f64::consts::PI - 1e-6);
        let pair = SectorPair::from_angles(&poly, 0.37, xi).unwrap();
        prop_assert!(check_lemma2(&pair, 1e-6).unwrap() >= -1e-9);
    }

    #[test]
    fn curve_vector_reverses_sign(b in body(), d in prop::collection::vec(direction(), 3)) {
        let pts: Vec<Vec3> = d.iter().map(|v| b.radial_point(v).unwrap()).collect();
        prop_assume!(pts[0].cross(&pts[1]).norm() > 1e-3 && pts[1].cross(&pts[2]).norm() > 1e-3);
        prop_assume!(pts[0].dot(&pts[1]) > -0.9 && pts[1].dot(&pts[2]) > -0.9);
        let c = curve(&b, &pts, 8).unwrap();
        prop_assert!((curve_vector(&c) + curve_vector(&c.reversed())).norm() < 1e-12);
    }

    #[test]
    fn curve_vector_is_equivariant(b in body(), d1 in direction(), d2 in direction(), g in rotation(), flip in any::<bool>()) {
        prop_assume!(d1.cross(&d2).norm() > 1e-3 && d1.dot(&d2) > -0.9);
        let m = if flip { -g } else { g };
        let c = curve(&b, &[b.radial_point(&d1).unwrap(), b.radial_point(&d2).unwrap()], 8).unwrap();
        let moved = c.transformed(&m);
        let expected = m * curve_vector(&c) * m.determinant();
        prop_assert!((curve_vector(&moved) - expected).norm() < 1e-12);
    }

    #[test]
    fn curve_vector_is_additive(b in body(), d in prop::collection::vec(direction(), 3)) {
        prop_assume!(d[0].cross(&d[1]).norm() > 1e-3 && d[1].cross(&d[2]).norm() > 1e-3);
        prop_assume!(d[0].dot(&d[1]) > -0.9 && d[1].dot(&d[2]) > -0.9);
        let p: Vec<Vec3> = d.iter().map(|v| b.radial_point(v).unwrap()).collect();
        let whole = curve_vector(&curve(&b, &p, 8).unwrap());
        let first = curve_vector(&curve(&b, &p[..2], 8).unwrap());
        let second = curve_vector(&curve(&b, &p[1..], 8).unwrap());
        prop_assert!((whole - first - second).norm() < 1e-12);
    }

    #[test]
    fn signed_volume_estimate(b in body(), center in direction(), spread in 0.1..0.6f64, t in 0.0..1.0f64) {
        let (e1, e2) = mahlerlab::geometry::plane_basis(&center);
        let anchors: Vec<Vec3> = (0..=3)
            .map(|k| {
                let a = std::f64::consts::TAU * (k % 3) as f64 / 3.0;
                b.radial_point(&(center + (e1 * a.cos() + e2 * a.sin()) * spread)).unwrap()
            })
            .collect();
        let c = curve(&b, &anchors, 8).unwrap();
        let x = b.vertices()[0] * t;
        prop_assert!(check_lemma4(&b, &c, &x).unwrap() >= -1e-8);
    }
}

#[test]
fn closed_polyline_vector_is_area_normal() {
    let square = BoundaryCurve::polyline(
        vec![
            Vec3::new(1.0, -1.0, -1.0),
            Vec3::new(1.0, 1.0, -1.0),
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, 1.0),
        ],
        true,
    );
    assert!((curve_vector(&square) - Vec3::new(4.0, 0.0, 0.0)).norm() < 1e-15);
}

#[test]
fn regular_polygon_products() {
    use mahlerlab::polarity::volume_product_2d;
    for n in 3..=12 {
        let p = volume_product_2d(&Polygon2::regular(n, 1.0, 0.2).unwrap()).unwrap();
        let s = (std::f64::consts::PI / n as f64).sin();
        assert!((p - (n * n) as f64 * s * s).abs() < 1e-9, "{n}");
    }
    let tri = Polygon2::new((Vec3::x(), Vec3::y()), vec![Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(-0.5, -0.5)]).unwrap();
    assert!(volume_product_2d(&tri).unwrap() >= 27.0 / 4.0 - 1e-9);
}

#[test]
fn catalog_group_orders() {
    let cases = [
        (GroupKind::C(5), 5),
        (GroupKind::Ch(4), 8),
        (GroupKind::Cv(3), 6),
        (GroupKind::S(4), 4),
        (GroupKind::S(3), 6),
        (GroupKind::D(6), 12),
        (GroupKind::Dd(2), 8),
        (GroupKind::Dh(5), 20),
        (GroupKind::T, 12),
        (GroupKind::Td, 24),
        (GroupKind::Th, 24),
        (GroupKind::O, 24),
        (GroupKind::Oh, 48),
        (GroupKind::I, 60),
        (GroupKind::Ih, 120),
    ];
    for (kind, order) in cases {
        assert_eq!(kind.group().order(), order, "{kind}");
        assert_eq!(kind.order(), order, "{kind}");
    }
}
