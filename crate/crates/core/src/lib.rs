//! Almost paracontact metric structures on 3-dimensional Walker manifolds.
//!
//! A structure is given by the defining function `f(x, y, z)` of the Walker
//! metric and the components of a unit space-like Reeb field `ξ`. From these
//! the crate builds `(φ, ξ, η, g)`, computes the structure tensor `F`,
//! decomposes it into the basic classes `G5`, `G6`, `G10`, `G12`, decides the
//! named classes and analyzes the curvature.
//!
//! Pointwise geometry is generic over [`scalar::Scalar`]; the decision
//! procedures run in `f64` with exact rational evaluation where expressions
//! allow it.

pub mod analyze;
pub mod classify;
pub mod corpus;
pub mod curvature;
pub mod field;
pub mod ftensor;
pub mod linalg;
pub mod manifest;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod structure;
pub mod walker;

pub use field::ScalarField;
pub use sampling::{Domain, Interval, SamplingConfig};
pub use structure::ApctStructure;
pub use walker::WalkerManifold;

/// The scalar type used by the decision procedures.
pub type Real = f64;
pub type Point = sampling::Point3<Real>;
pub type Jet = field::Jet3<Real>;
