//! Error types shared across the crate.
//!
//! Validation errors always carry a witness: the concrete elements on which
//! an axiom fails, named by their string ids.

use thiserror::Error;

/// Structural validation failures for lattices, quantaloids, categories,
/// functors and distributors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("unknown element `{0}`")]
    ForeignElement(String),
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(String, String, String),
    #[error("relation is not antisymmetric: {0} <= {1} and {1} <= {0} with {0} != {1}")]
    NotAntisymmetric(String, String),
    #[error("no join for {{{0}, {1}}}")]
    MissingJoin(String, String),
    #[error("no meet for {{{0}, {1}}}")]
    MissingMeet(String, String),
    #[error("no top element")]
    MissingTop,
    #[error("no bottom element")]
    MissingBottom,

    #[error("composition is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("unit law violated at `{0}`")]
    UnitLawViolated(String),
    #[error("composition does not preserve joins: {0}")]
    NotJoinContinuous(String),
    #[error("partial table: {0}")]
    PartialTable(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("quantale is not divisible at pair ({0}, {1})")]
    NotDivisible(String, String),
    #[error("category is not over the two-element quantale")]
    NotOverTwo,

    #[error("composition inequality violated at ({0}, {1}, {2})")]
    CompositionInequalityViolated(String, String, String),
    #[error("unit inequality violated at `{0}`")]
    UnitInequalityViolated(String),
    #[error("functor map is not type-preserving at `{0}`")]
    NotTypePreserving(String),
    #[error("hom inequality violated at ({0}, {1})")]
    HomInequalityViolated(String, String),
    #[error("bimodule inequality violated at ({0}, {1}, {2}, {3})")]
    BimoduleInequalityViolated(String, String, String, String),
}

/// Errors raised by enumeration-backed operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapError {
    #[error("presheaf enumeration exceeded cap of {0}")]
    EnumerationCapExceeded(usize),
    #[error("directed-subset search exceeded cap: {0} generators")]
    SubsetSearchCapExceeded(usize),
}

/// A disagreement between two routes that the theory proves equivalent.
/// Signals an implementation bug, never a mathematical finding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("internal inconsistency: {0}")]
pub struct InternalInconsistency(pub String);

/// Failures surfaced by the continuity/algebraicity engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Cap(#[from] CapError),
    #[error(transparent)]
    Inconsistent(#[from] InternalInconsistency),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}
