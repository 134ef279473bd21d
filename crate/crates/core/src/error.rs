use thiserror::Error;

/// Errors raised by the library. Every variant is recoverable by the caller;
/// programmer errors such as mixing polynomials from different rings panic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quotient is infinite-dimensional (more than {limit} standard monomials)")]
    InfiniteColength { limit: usize },

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("contact order mismatch: expected {expected}, found {found:?}")]
    ContactOrderMismatch { expected: u32, found: Option<u32> },

    #[error("colength certification failed up to truncation order {cap}")]
    CertificationFailed { cap: u32 },

    #[error("singularity is not isolated at the origin (certification failed up to order {cap})")]
    NotIsolated { cap: u32 },

    #[error("mu + r - 1 = {0} is odd; branch count inconsistent with the Milnor number")]
    InconsistentBranchCount(i64),

    #[error("not a w-contact equation: {0}")]
    NotWContact(String),

    #[error("operation requires a {expected} family")]
    WrongKind { expected: &'static str },

    #[error("E_0 does not lie in the ideal")]
    E0NotInIdeal,

    #[error("point does not lie on the scheme: equation {index} evaluates to {value}")]
    PointNotOnScheme { index: usize, value: String },

    #[error("not a strata-preserving coordinate change: {0}")]
    NotStrataPreserving(String),

    #[error("variable `{0}` is not local to this computation")]
    NonLocalVariable(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid term order: {0}")]
    InvalidOrder(String),

    #[error("job error: {0}")]
    Job(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
