//! Volume products of symmetric convex polytopes in three dimensions.
//!
//! The crate computes `P(K) = min_z |K| |(K − z)°|` for polytopes, the proven lower
//! bounds for bodies invariant under the finite subgroups of `O(3)`, and the planar and
//! signed-volume estimates those bounds rest on.

pub mod bodies;
pub mod error;
pub mod geometry;
pub mod optim;
pub mod polarity;
pub mod search;
pub mod sections;
pub mod signed_volume;
pub mod symmetry;

pub use bodies::{BoundStatus, CatalogEntry, CatalogRow};
pub use error::{Error, Result};
pub use geometry::{convex_hull_2d, convex_hull_3d, ConvexBody3, Facet, Mat3, Polygon2, Vec2, Vec3};
pub use polarity::{BoundReport, EqualityClass};
pub use search::{InvariantFamily, SearchConfig, SearchResult};
pub use sections::{EqualityCase, SectorPair};
pub use signed_volume::{BoundaryCurve, ChainStep, GroupBoundCheck};
pub use symmetry::{GroupKind, PointGroup};
