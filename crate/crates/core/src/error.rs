use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("{op} requires constant term {expected}")]
    ConstantTerm { op: &'static str, expected: i32 },

    /// A structure violates one of its defining invariants.
    #[error("invalid {kind}: {reason}")]
    Invariant { kind: &'static str, reason: String },

    #[error("predicted count {predicted} exceeds the enumeration cap {cap} (use --force to override)")]
    ResourceCap { predicted: String, cap: u64 },

    #[error("multiset has no root vertices, so it is outside the encoding range")]
    NoRootVertices,

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invariant(kind: &'static str, reason: impl Into<String>) -> Self {
        Error::Invariant {
            kind,
            reason: reason.into(),
        }
    }
}
