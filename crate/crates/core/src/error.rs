//! Typed errors for every failure the library distinguishes.
//!
//! Two classes matter to callers: malformed input (wrong shape, unknown
//! names, unparseable JSON) and mathematically invalid input (data that is
//! well-formed but violates a precondition or a theorem hypothesis). The CLI
//! maps the first class to exit code 2 and the second to exit code 1.

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    // ---- malformed input (CLI exit 2) ----
    #[error("JSON parse error: {0}")]
    Json(String),
    #[error("vector for '{name}' has length {got}, expected {expected}")]
    WrongVectorLength {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("unknown ray name '{0}'")]
    UnknownRay(String),
    #[error("duplicate ray name '{0}'")]
    DuplicateRayName(String),
    #[error("duplicate name '{0}' across rays/colors/sigma")]
    DuplicateName(String),
    #[error("duplicate cone {0:?}")]
    DuplicateCone(Vec<String>),
    #[error("duplicate ray name '{0}' inside one cone")]
    RepeatedRayInCone(String),
    #[error("bad flag or argument: {0}")]
    BadArgument(String),

    // ---- mathematically invalid input (CLI exit 1) ----
    #[error("fan validation failed:\n{0}")]
    InvalidFan(String),
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("fan is not complete")]
    NotComplete,
    #[error("operation requires a fan with full-space support")]
    SupportNotFullSpace,
    #[error("root polytope is unbounded (fan rays do not positively span)")]
    Unbounded,
    #[error("box bound {bound} too small: polytope vertex coordinate reaches {needed}")]
    BoundTooSmall { bound: i64, needed: String },
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
    #[error("generators contain a line; cone is not strictly convex")]
    NotStrictlyConvex,
    #[error("zero vector passed as a cone generator")]
    ZeroGenerator,
    #[error("positivity functional vanishes on root {0:?}")]
    DegeneratePositivity(Vec<i64>),
    #[error("ray '{ray}' is not movable: {reason}")]
    NotMovable { ray: String, reason: String },
    #[error("lattice decomposition fails: {0}")]
    DecompositionFails(String),
    #[error("stable set must contain every linear-part boundary ray; missing '{0}'")]
    StableMustContainLinear(String),
    #[error("moved set must lie in the linear-part boundary; '{0}' is not linear")]
    MovedMustBeLinear(String),
    #[error("join decomposition fails for moved ray '{0}'")]
    JoinFailed(String),
    #[error("restriction produced a non-simplicial cone from {0:?}")]
    NonSimplicialRestriction(Vec<String>),
    #[error("fiber fan is not complete in the linear-part subspace")]
    FiberNotComplete,
    #[error("restricted-root search region is unbounded (insufficient colors/boundary to bound it)")]
    UnboundedSearch,
    #[error("restricted root system is not contained in the fiber root system: {0}")]
    PhiContainment(String),
    #[error("lattice pairing is not unimodular: {0}")]
    LatticeMismatch(String),
    #[error("opposite-pair vanishing fails: {0}")]
    OppositeLemma(String),
    #[error("sigma set is not linearly independent")]
    SigmaNotIndependent,
    #[error("declared support disagrees with the region derived from sigma")]
    SupportMismatch,
    #[error("integer exceeds the i64 output range: {0}")]
    IntegerTooLargeForOutput(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("invariant guaranteed by the theory failed on this input: {0}")]
    InternalInvariant(String),
}

impl Error {
    /// CLI exit code class: 2 for malformed input, 1 for invalid data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Json(_)
            | Error::WrongVectorLength { .. }
            | Error::UnknownRay(_)
            | Error::DuplicateRayName(_)
            | Error::DuplicateName(_)
            | Error::DuplicateCone(_)
            | Error::RepeatedRayInCone(_)
            | Error::BadArgument(_) => 2,
            _ => 1,
        }
    }

    /// Stable variant name, used by the CLI to tag stderr diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Json(_) => "Json",
            Error::WrongVectorLength { .. } => "WrongVectorLength",
            Error::UnknownRay(_) => "UnknownRay",
            Error::DuplicateRayName(_) => "DuplicateRayName",
            Error::DuplicateName(_) => "DuplicateName",
            Error::DuplicateCone(_) => "DuplicateCone",
            Error::RepeatedRayInCone(_) => "RepeatedRayInCone",
            Error::BadArgument(_) => "BadArgument",
            Error::InvalidFan(_) => "InvalidFan",
            Error::NotSmooth => "NotSmooth",
            Error::NotComplete => "NotComplete",
            Error::SupportNotFullSpace => "SupportNotFullSpace",
            Error::Unbounded => "Unbounded",
            Error::BoundTooSmall { .. } => "BoundTooSmall",
            Error::EnumerationTooLarge(_) => "EnumerationTooLarge",
            Error::NotStrictlyConvex => "NotStrictlyConvex",
            Error::ZeroGenerator => "ZeroGenerator",
            Error::DegeneratePositivity(_) => "DegeneratePositivity",
            Error::NotMovable { .. } => "NotMovable",
            Error::DecompositionFails(_) => "DecompositionFails",
            Error::StableMustContainLinear(_) => "StableMustContainLinear",
            Error::MovedMustBeLinear(_) => "MovedMustBeLinear",
            Error::JoinFailed(_) => "JoinFailed",
            Error::NonSimplicialRestriction(_) => "NonSimplicialRestriction",
            Error::FiberNotComplete => "FiberNotComplete",
            Error::UnboundedSearch => "UnboundedSearch",
            Error::PhiContainment(_) => "PhiContainment",
            Error::LatticeMismatch(_) => "LatticeMismatch",
            Error::OppositeLemma(_) => "OppositeLemma",
            Error::SigmaNotIndependent => "SigmaNotIndependent",
            Error::SupportMismatch => "SupportMismatch",
            Error::IntegerTooLargeForOutput(_) => "IntegerTooLargeForOutput",
            Error::RankMismatch(_) => "RankMismatch",
            Error::InternalInvariant(_) => "InternalInvariant",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
