//! Chambers, simple wall crossings and normaliser groupoids of Tits cone
//! intersections.
//!
//! Given a Coxeter diagram `Γ` and a node subset `J`, this crate builds the
//! hyperplane arrangement cut out on `Θ_J` (the subspace of the contragredient
//! representation killing the `J`-simple roots), labels its chambers by pairs
//! `(x, I)`, walks it by simple wall crossings, and derives presentations of
//! the normaliser quotients `N(W,J)` and, in finite type, `N(A,J)` through the
//! reduced ribbon groupoid of the Artin monoid.
//!
//! All arithmetic is exact: entries of the reflection representation live in
//! `Q(2cos(π/L))` ([`AlgebraicScalar`]) and signs are decided without
//! floating point.

pub mod arrangement;
pub mod coxeter;
pub mod diagram;
pub mod field;
pub mod garside;
pub mod groupoid;
pub mod output;
pub mod paths;
pub mod presentation;
pub mod ribbon;
pub mod scalar;
pub mod verify;

pub use arrangement::{Arrangement, ArrangementGraph, ChamberLabel, RestrictedHyperplane};
pub use coxeter::{CoxeterSystem, GroupElement, Root, ThetaPoint};
pub use diagram::{Bond, CoxeterDiagram, NodeSet};
pub use field::NumberField;
pub use garside::{ArtinElement, GarsideElement};
pub use groupoid::{BHMorphism, RankTwoLcm};
pub use presentation::{GroupPresentation, GroupoidPresentation};
pub use scalar::AlgebraicScalar;

/// Errors reported by the engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid node set: {0}")]
    InvalidNodes(String),
    #[error("not an element of the Coxeter group: {0}")]
    NotInGroup(String),
    #[error("parabolic subgroup on {0} is infinite")]
    InfiniteParabolic(String),
    #[error("a radius is required for a diagram that is not of finite type")]
    RadiusRequired,
    #[error("operation requires a finite-type diagram")]
    NotFiniteType,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
