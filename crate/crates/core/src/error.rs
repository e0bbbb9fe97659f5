use thiserror::Error;

use crate::graph::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("invalid graph manifold: {}", summarize(.0))]
    Validation(Vec<Violation>),

    #[error("invalid Seifert invariants: {0}")]
    InvalidSeifert(String),

    #[error("criterion requires a base of positive genus")]
    GenusZeroUnsupported,

    #[error("empty input list")]
    EmptyInput,

    #[error("slope {0:?} is the fiber and cannot be used as a filling slope")]
    FiberSlope((i64, i64)),

    #[error("expected {expected} slopes (one per boundary slot), got {got}")]
    SlopeCount { expected: usize, got: usize },

    #[error("unknown piece `{0}`")]
    UnknownPiece(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Riemann-Hurwitz genus is not an integer for genus {genus}, boundary {boundary}, q = {q}")]
    NonIntegralGenus { genus: i64, boundary: i64, q: u64 },

    #[error(
        "piece `{piece}` has {boundary} boundary torus; the characteristic cover needs at least 2 \
         (apply a genus-raising cover centred at a neighbour first)"
    )]
    BoundaryCountTooSmall { piece: String, boundary: i64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {q} must exceed the largest boundary count {max_boundary}")]
    PrimeTooSmall { q: u64, max_boundary: i64 },

    #[error("constructed cover is disconnected")]
    DisconnectedCover,

    #[error("horizontal foliation criterion fails for the filled piece; no flat connection is available")]
    EhnFails,

    #[error("wrong case: absolute Euler number is {0}")]
    WrongCase(String),

    #[error("gluing matrices are not all of the form J or -J")]
    NotPmJ,

    #[error("pieces `{0}` and `{1}` share no JSJ torus")]
    NotAdjacent(String, String),

    #[error(
        "absolute Euler number is zero but some gluing matrix is not +-J; the normalizing finite \
         cover that puts every gluing matrix in +-J form is required and is not implemented"
    )]
    PmJFormRequired,

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag used on the CLI error stream.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::Validation(_) => "ValidationError",
            Error::InvalidSeifert(_) => "InvalidSeifert",
            Error::GenusZeroUnsupported => "GenusZeroUnsupported",
            Error::EmptyInput => "EmptyInput",
            Error::FiberSlope(_) => "FiberSlope",
            Error::SlopeCount { .. } => "SlopeCount",
            Error::UnknownPiece(_) => "UnknownPiece",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NonIntegralGenus { .. } => "NonIntegralGenus",
            Error::BoundaryCountTooSmall { .. } => "BoundaryCountTooSmall",
            Error::NotPrime(_) => "NotPrime",
            Error::PrimeTooSmall { .. } => "PrimeTooSmall",
            Error::DisconnectedCover => "DisconnectedCover",
            Error::EhnFails => "EhnFails",
            Error::WrongCase(_) => "WrongCase",
            Error::NotPmJ => "NotPMJ",
            Error::NotAdjacent(..) => "NotAdjacent",
            Error::PmJFormRequired => "PMJFormRequired",
            Error::Internal(_) => "Internal",
            Error::Io(_) => "IoError",
        }
    }

    /// CLI exit code: 1 validation failure, 2 unsupported input, 3 parse/io.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) => 1,
            Error::Parse(_) | Error::Io(_) => 3,
            _ => 2,
        }
    }
}

fn summarize(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
