use std::fmt;

use thiserror::Error;

use crate::graph::Vertex;

/// Pipeline stage that produced a failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Diamonds,
    Posa,
    Splice,
    Harvest,
    Link,
    Stitch,
    Partition,
    ExpanderPath,
    Extend,
    Validate,
}

impl Stage {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stage::Diamonds => "diamonds",
            Stage::Posa => "posa",
            Stage::Splice => "splice",
            Stage::Harvest => "harvest",
            Stage::Link => "link",
            Stage::Stitch => "stitch",
            Stage::Partition => "partition",
            Stage::ExpanderPath => "expander-path",
            Stage::Extend => "extend",
            Stage::Validate => "validate",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a Hamilton search gave up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchFailure {
    /// The instance does not satisfy the hypothesis that guarantees success.
    PreconditionViolated,
    /// The rotation/extension step budget ran out.
    BudgetExhausted,
    /// No rotation, extension or booster applies to the current path.
    Stuck,
    /// Exhaustive search proved there is no solution.
    Infeasible,
}

impl fmt::Display for SearchFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchFailure::PreconditionViolated => "precondition violated",
            SearchFailure::BudgetExhausted => "budget exhausted",
            SearchFailure::Stuck => "stuck",
            SearchFailure::Infeasible => "infeasible",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("refusing exhaustive enumeration: n = {n} exceeds limit {limit}")]
    Refused { n: usize, limit: usize },

    #[error("graph has no triangle")]
    NoTriangle,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("[{stage}] not found ({failure}): {detail}")]
    NotFound { stage: Stage, failure: SearchFailure, detail: String },

    #[error("found {found} of {wanted} vertex-disjoint good diamonds")]
    DiamondsExhausted { found: usize, wanted: usize },

    #[error("directed path of length {} is shorter than the target {target}", .path.len().saturating_sub(1))]
    TooShort { path: Vec<Vertex>, target: usize },

    #[error("harvested {found} of {wanted} disjoint directed paths")]
    PartialHarvest { found: usize, wanted: usize },

    #[error("[{stage}] bound violated: {detail}")]
    BoundViolation { stage: Stage, detail: String },

    #[error("partition construction failed: {clause}")]
    ConstructionFailed { clause: String },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn not_found(stage: Stage, failure: SearchFailure, detail: impl Into<String>) -> Self {
        Error::NotFound { stage, failure, detail: detail.into() }
    }

    /// Stage tag of the failure, when the error carries one.
    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::NotFound { stage, .. } | Error::BoundViolation { stage, .. } => Some(*stage),
            Error::DiamondsExhausted { .. } | Error::NoTriangle => Some(Stage::Diamonds),
            Error::TooShort { .. } | Error::PartialHarvest { .. } => Some(Stage::Harvest),
            Error::ConstructionFailed { .. } => Some(Stage::Partition),
            _ => None,
        }
    }

    /// Re-tag a search failure with the stage of the caller.
    pub(crate) fn at_stage(self, stage: Stage) -> Self {
        match self {
            Error::NotFound { failure, detail, .. } => Error::NotFound { stage, failure, detail },
            Error::BoundViolation { detail, .. } => Error::BoundViolation { stage, detail },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
