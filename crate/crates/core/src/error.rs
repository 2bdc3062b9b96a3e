use thiserror::Error;

/// Errors shared by every layer of the library.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Input violates an operation's precondition (wrong sign pattern,
    /// non-positive parameter, singular matrix, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A validated comparison landed inside the uncertainty of the enclosure
    /// and no sign could be certified.
    #[error("indeterminate comparison: {0}")]
    Indeterminate(String),

    /// A pairing that must be nonzero vanished.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// `proj_from_to` was asked to relate triples with different trigonal
    /// parameters; no projectivity exists between them.
    #[error("mismatched trigonal parameters: f^3 = {0} vs {1}")]
    MismatchedTrigonalParameter(String, String),

    /// Exact mode needed the cube root of a rational that is not a perfect
    /// cube. Retry in validated-float mode.
    #[error("cube root is not exact: {0}")]
    CubeRootNotExact(String),

    /// The point is off the finite-volume locus (T = 1, E = 1 fails).
    #[error("constraint violation: {0}")]
    Constraint(String),

    /// The flip algorithm exceeded its budget.
    #[error("canonicalization did not terminate within {max_flips} flips")]
    NonTermination { max_flips: u32 },

    /// An orbit enumeration or similar exceeded its configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A state the mathematics proves impossible was reached; this is a bug.
    #[error("internal invariant violation: {0}")]
    InternalInvariant(String),

    /// Malformed input file or parameter string.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
