//! Finite subgroups of O(3) in Schoenflies notation.
//!
//! Coordinates: cyclic and dihedral families rotate about the z-axis, `V` reflects
//! `y ↦ −y`, `H` reflects `z ↦ −z`. The tetrahedral family fixes the regular simplex
//! with vertex `(1,1,1)/√3`, the icosahedral family fixes the icosahedron with
//! vertices `(0, ±1, ±φ)` and their cyclic permutations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    axis_rotation, dedup_points, hausdorff, mat3_from_rows, mat3_to_rows, orthogonality_defect,
    ConvexBody3, Mat3, Vec3, DEDUP_TOL, ORTHO_TOL,
};

/// Entrywise tolerance when comparing group elements.
pub const ELEMENT_TOL: f64 = 1e-9;
/// Closure aborts beyond this many elements.
pub const GROUP_CAP: usize = 10_000;

/// Catalog family together with its order parameter.
///
/// `S(n)` is the group generated by the rotoreflection `R_n H`; for odd `n` it coincides
/// with `C_nh`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    C(usize),
    Ch(usize),
    Cv(usize),
    S(usize),
    D(usize),
    Dd(usize),
    Dh(usize),
    T,
    Td,
    Th,
    O,
    Oh,
    I,
    Ih,
}

impl GroupKind {
    /// Parses names such as `"C_3h"`, `"S6"`, `"T_d"`, or a family name (`"C_h"`, `"D"`,
    /// `"S"`) combined with an explicit order.
    pub fn parse(name: &str, order: Option<usize>) -> Result<GroupKind> {
        let cleaned: String = name.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
        let mut chars = cleaned.chars();
        let family = chars.next().ok_or_else(|| Error::UnknownName(name.into()))?;
        let rest: String = chars.collect();
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        let suffix = &rest[digits.len()..];
        let written = if digits.is_empty() {
            None
        } else {
            Some(digits.parse::<usize>().map_err(|_| Error::BadOrder(name.into()))?)
        };
        let n = match (written, order) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::BadOrder(format!("{name} does not have order {b}")))
            }
            (a, b) => a.or(b),
        };
        let needs_order = |n: Option<usize>| match n {
            Some(0) => Err(Error::BadOrder(format!("{name}: order must be at least 1"))),
            Some(n) => Ok(n),
            None => Err(Error::BadOrder(format!("{name}: missing order"))),
        };
        let no_order = |kind: GroupKind| {
            if written.is_some() {
                Err(Error::UnknownName(name.into()))
            } else {
                Ok(kind)
            }
        };
        match (family, suffix) {
            ('C', "") => Ok(GroupKind::C(needs_order(n)?)),
            ('C', "h") => Ok(GroupKind::Ch(needs_order(n)?)),
            ('C', "v") => Ok(GroupKind::Cv(needs_order(n)?)),
            ('S', "") => Ok(GroupKind::S(needs_order(n)?)),
            ('D', "") => Ok(GroupKind::D(needs_order(n)?)),
            ('D', "d") => Ok(GroupKind::Dd(needs_order(n)?)),
            ('D', "h") => Ok(GroupKind::Dh(needs_order(n)?)),
            ('T', "") => no_order(GroupKind::T),
            ('T', "d") => no_order(GroupKind::Td),
            ('T', "h") => no_order(GroupKind::Th),
            ('O', "") => no_order(GroupKind::O),
            ('O', "h") => no_order(GroupKind::Oh),
            ('I', "") => no_order(GroupKind::I),
            ('I', "h") => no_order(GroupKind::Ih),
            _ => Err(Error::UnknownName(name.into())),
        }
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        match *self {
            GroupKind::C(l) => l,
            GroupKind::Ch(l) | GroupKind::Cv(l) | GroupKind::D(l) => 2 * l,
            GroupKind::S(n) => {
                if n % 2 == 0 {
                    n
                } else {
                    2 * n
                }
            }
            GroupKind::Dd(l) | GroupKind::Dh(l) => 4 * l,
            GroupKind::T => 12,
            GroupKind::Td | GroupKind::Th | GroupKind::O => 24,
            GroupKind::Oh => 48,
            GroupKind::I => 60,
            GroupKind::Ih => 120,
        }
    }

    /// The order parameter of axial families.
    pub fn axial_order(&self) -> Option<usize> {
        match *self {
            GroupKind::C(l)
            | GroupKind::Ch(l)
            | GroupKind::Cv(l)
            | GroupKind::S(l)
            | GroupKind::D(l)
            | GroupKind::Dd(l)
            | GroupKind::Dh(l) => Some(l),
            _ => None,
        }
    }

    pub fn generators(&self) -> Vec<Mat3> {
        let v = Mat3::from_diagonal(&Vec3::new(1.0, -1.0, 1.0));
        let h = Mat3::from_diagonal(&Vec3::new(1.0, 1.0, -1.0));
        let minus = -Mat3::identity();
        match *self {
            GroupKind::C(l) => vec![rotation_z(l)],
            GroupKind::Ch(l) => vec![rotation_z(l), h],
            GroupKind::Cv(l) => vec![rotation_z(l), v],
            GroupKind::S(n) => vec![rotation_z(n) * h],
            GroupKind::D(l) => vec![rotation_z(l), v * h],
            GroupKind::Dd(l) => vec![rotation_z(2 * l) * h, v],
            GroupKind::Dh(l) => vec![rotation_z(l), v, h],
            GroupKind::T => tetrahedral_rotations(),
            GroupKind::Td => {
                let mut g = tetrahedral_rotations();
                g.push(mat3_from_rows(&[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]));
                g
            }
            GroupKind::Th => {
                let mut g = tetrahedral_rotations();
                g.push(minus);
                g
            }
            GroupKind::O => octahedral_rotations(),
            GroupKind::Oh => {
                let mut g = octahedral_rotations();
                g.push(minus);
                g
            }
            GroupKind::I => icosahedral_rotations(),
            GroupKind::Ih => {
                let mut g = icosahedral_rotations();
                g.push(minus);
                g
            }
        }
    }

    pub fn group(&self) -> PointGroup {
        let mut g = generate_group(&self.generators()).expect("catalog generators are valid");
        g.name = self.to_string();
        g.kind = Some(*self);
        g
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::C(l) => write!(f, "C_{l}"),
            GroupKind::Ch(l) => write!(f, "C_{l}h"),
            GroupKind::Cv(l) => write!(f, "C_{l}v"),
            GroupKind::S(n) => write!(f, "S_{n}"),
            GroupKind::D(l) => write!(f, "D_{l}"),
            GroupKind::Dd(l) => write!(f, "D_{l}d"),
            GroupKind::Dh(l) => write!(f, "D_{l}h"),
            GroupKind::T => write!(f, "T"),
            GroupKind::Td => write!(f, "T_d"),
            GroupKind::Th => write!(f, "T_h"),
            GroupKind::O => write!(f, "O"),
            GroupKind::Oh => write!(f, "O_h"),
            GroupKind::I => write!(f, "I"),
            GroupKind::Ih => write!(f, "I_h"),
        }
    }
}

/// Rotation through `2π/l` about the z-axis.
pub fn rotation_z(l: usize) -> Mat3 {
    let t = std::f64::consts::TAU / l as f64;
    let (s, c) = t.sin_cos();
    mat3_from_rows(&[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0])
}

fn tetrahedral_rotations() -> Vec<Mat3> {
    [
        [0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, -1.0, -1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0],
    ]
    .iter()
    .map(mat3_from_rows)
    .collect()
}

fn octahedral_rotations() -> Vec<Mat3> {
    vec![
        mat3_from_rows(&[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]),
        mat3_from_rows(&[1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0]),
    ]
}

fn icosahedral_rotations() -> Vec<Mat3> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    vec![
        mat3_from_rows(&[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]),
        axis_rotation(&Vec3::new(0.0, 1.0, phi), std::f64::consts::TAU / 5.0),
    ]
}

/// Finite group of orthogonal matrices.
#[derive(Debug, Clone)]
pub struct PointGroup {
    pub name: String,
    /// Catalog family, when the group is known to equal a catalog group.
    pub kind: Option<GroupKind>,
    pub elements: Vec<Mat3>,
    pub generators: Vec<Mat3>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    name: String,
    generators: Vec<[f64; 9]>,
}

fn same_matrix(a: &Mat3, b: &Mat3) -> bool {
    (a - b).abs().max() <= ELEMENT_TOL
}

/// Breadth-first closure of the generators under multiplication.
pub fn generate_group(generators: &[Mat3]) -> Result<PointGroup> {
    for g in generators {
        let deviation = orthogonality_defect(g).max((g.determinant().abs() - 1.0).abs());
        if !g.iter().all(|x| x.is_finite()) || deviation > ORTHO_TOL {
            return Err(Error::NotOrthogonal { deviation });
        }
    }
    let mut elements = vec![Mat3::identity()];
    let mut cursor = 0;
    while cursor < elements.len() {
        let e = elements[cursor];
        cursor += 1;
        for g in generators {
            let p = g * e;
            if !elements.iter().any(|q| same_matrix(q, &p)) {
                if elements.len() >= GROUP_CAP {
                    return Err(Error::GroupTooLarge { cap: GROUP_CAP });
                }
                elements.push(p);
            }
        }
    }
    Ok(PointGroup {
        name: "custom".into(),
        kind: None,
        elements,
        generators: generators.to_vec(),
    })
}

/// Catalog group by Schoenflies name.
pub fn schoenflies(name: &str, order: Option<usize>) -> Result<PointGroup> {
    Ok(GroupKind::parse(name, order)?.group())
}

impl PointGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Mat3) -> bool {
        self.elements.iter().any(|e| same_matrix(e, m))
    }

    /// Same element set (up to [`ELEMENT_TOL`]).
    pub fn same_elements(&self, other: &PointGroup) -> bool {
        self.order() == other.order() && other.elements.iter().all(|e| self.contains(e))
    }

    /// `true` when every element is a rotation.
    pub fn is_rotation_group(&self) -> bool {
        self.elements.iter().all(|e| e.determinant() > 0.0)
    }

    /// The conjugate group `m G mᵀ` for orthogonal `m`; the name is kept but the
    /// catalog kind is dropped.
    pub fn conjugate(&self, m: &Mat3) -> Result<PointGroup> {
        let gens: Vec<Mat3> = self.generators.iter().map(|g| m * g * m.transpose()).collect();
        let mut g = generate_group(&gens)?;
        g.name = self.name.clone();
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let doc = GroupJson {
            name: self.name.clone(),
            generators: self.generators.iter().map(mat3_to_rows).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("generators serialize")
    }

    /// Reads a group from generators. The catalog kind named in the file is attached
    /// only if the generated group coincides with that catalog group.
    pub fn from_json(text: &str) -> Result<PointGroup> {
        let doc: GroupJson = serde_json::from_str(text)?;
        let gens: Vec<Mat3> = doc.generators.iter().map(mat3_from_rows).collect();
        let mut group = generate_group(&gens)?;
        if let Ok(kind) = GroupKind::parse(&doc.name, None) {
            if kind.group().same_elements(&group) {
                group.kind = Some(kind);
            }
        }
        group.name = doc.name;
        Ok(group)
    }
}

/// Distinct images `g·p`.
pub fn orbit(group: &PointGroup, p: &Vec3) -> Vec<Vec3> {
    let images: Vec<Vec3> = group.elements.iter().map(|g| g * p).collect();
    dedup_points(&images, DEDUP_TOL)
}

/// Checks `g·K = K` for every generator by vertex-set Hausdorff distance.
pub fn is_invariant(group: &PointGroup, body: &ConvexBody3, tol: f64) -> bool {
    invariance_defect(group, body) < tol
}

/// Largest vertex-set Hausdorff distance between `g·K` and `K` over the generators.
pub fn invariance_defect(group: &PointGroup, body: &ConvexBody3) -> f64 {
    group
        .generators
        .iter()
        .map(|g| {
            let moved: Vec<Vec3> = body.vertices().iter().map(|v| g * v).collect();
            hausdorff(&moved, body.vertices())
        })
        .fold(0.0, f64::max)
}

/// Convex hull of the union of the orbits of `seeds`.
pub fn symmetrize(group: &PointGroup, seeds: &[Vec3]) -> Result<ConvexBody3> {
    let pts: Vec<Vec3> = seeds.iter().flat_map(|s| orbit(group, s)).collect();
    ConvexBody3::from_points(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!(GroupKind::parse("C_3h", None).unwrap(), GroupKind::Ch(3));
        assert_eq!(GroupKind::parse("C_h", Some(4)).unwrap(), GroupKind::Ch(4));
        assert_eq!(GroupKind::parse("S", Some(2)).unwrap(), GroupKind::S(2));
        assert_eq!(GroupKind::parse("D6", None).unwrap(), GroupKind::D(6));
        assert_eq!(GroupKind::parse("T_d", None).unwrap(), GroupKind::Td);
        assert_eq!(GroupKind::parse("I_h", None).unwrap(), GroupKind::Ih);
        assert!(matches!(GroupKind::parse("D", None), Err(Error::BadOrder(_))));
        assert!(matches!(GroupKind::parse("C_0", None), Err(Error::BadOrder(_))));
        assert!(matches!(GroupKind::parse("C_3", Some(4)), Err(Error::BadOrder(_))));
        assert!(matches!(GroupKind::parse("Q", None), Err(Error::UnknownName(_))));
        assert!(matches!(GroupKind::parse("T_3", None), Err(Error::UnknownName(_))));
        for k in [GroupKind::Dd(3), GroupKind::Cv(5), GroupKind::Oh, GroupKind::S(6)] {
            assert_eq!(GroupKind::parse(&k.to_string(), None).unwrap(), k);
        }
    }

    #[test]
    fn catalog_orders() {
        for l in 1..=8 {
            for k in [
                GroupKind::C(l),
                GroupKind::Ch(l),
                GroupKind::Cv(l),
                GroupKind::S(2 * l),
                GroupKind::D(l),
                GroupKind::Dd(l),
                GroupKind::Dh(l),
            ] {
                assert_eq!(k.group().order(), k.order(), "{k}");
            }
        }
        let expected = [
            (GroupKind::T, 12),
            (GroupKind::Td, 24),
            (GroupKind::Th, 24),
            (GroupKind::O, 24),
            (GroupKind::Oh, 48),
            (GroupKind::I, 60),
            (GroupKind::Ih, 120),
        ];
        for (k, n) in expected {
            assert_eq!(k.group().order(), n, "{k}");
        }
        assert_eq!(GroupKind::S(3).group().order(), 6);
    }

    #[test]
    fn oh_is_signed_permutations() {
        let g = GroupKind::Oh.group();
        for e in &g.elements {
            for r in 0..3 {
                let row = e.row(r);
                assert_eq!(row.iter().filter(|x| x.abs() > 0.5).count(), 1);
                assert!(row.iter().all(|x| x.abs() < 1e-12 || (x.abs() - 1.0).abs() < 1e-12));
            }
        }
    }

    #[test]
    fn s2_is_central_inversion() {
        let g = schoenflies("S", Some(2)).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.contains(&-Mat3::identity()));
    }

    #[test]
    fn rotation_groups_have_positive_determinants() {
        for k in [GroupKind::C(5), GroupKind::D(4), GroupKind::T, GroupKind::O, GroupKind::I] {
            assert!(k.group().is_rotation_group(), "{k}");
        }
        assert!(!GroupKind::Th.group().is_rotation_group());
    }

    #[test]
    fn non_orthogonal_and_infinite_generators_rejected() {
        let shear = mat3_from_rows(&[1.0, 0.1, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(matches!(generate_group(&[shear]), Err(Error::NotOrthogonal { .. })));
        let irrational = axis_rotation(&Vec3::z(), 1.0);
        assert!(matches!(generate_group(&[irrational]), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn orbits() {
        let a = Vec3::new(1.0, 1.0, 1.0) / 3f64.sqrt();
        assert_eq!(orbit(&GroupKind::T.group(), &a).len(), 4);
        assert_eq!(orbit(&GroupKind::O.group(), &Vec3::x()).len(), 6);
        assert_eq!(orbit(&GroupKind::I.group(), &Vec3::zeros()).len(), 1);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_eq!(orbit(&GroupKind::I.group(), &Vec3::new(0.0, 1.0, phi)).len(), 12);
    }

    #[test]
    fn json_round_trip_keeps_kind_only_when_equal() {
        let g = GroupKind::Dh(4).group();
        let back = PointGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(back.kind, Some(GroupKind::Dh(4)));
        let lie = "{\"name\": \"O_h\", \"generators\": [[1,0,0,0,1,0,0,0,-1]]}";
        let g = PointGroup::from_json(lie).unwrap();
        assert_eq!(g.kind, None);
        assert_eq!(g.order(), 2);
    }
}
