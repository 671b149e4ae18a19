use thiserror::Error;

/// Crate-wide error type.  Variants mirror the failure modes of the public
/// operations; the CLI maps them onto exit codes.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),

    /// The square of an odd generator is needed but not determined by the
    /// available data (classical Spin groups over F_2).
    #[error("square of {generator} is not determined (missing square data)")]
    UnknownSquare { generator: String },

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("unsupported coefficients for this operation: {0}")]
    UnsupportedCoefficient(String),

    #[error("map is not a differential: {0}")]
    NotADifferential(String),

    #[error("unknown generator label: {0}")]
    UnknownLabel(String),

    #[error("torsion presentation disagrees with the delta_p image: {0}")]
    OracleMismatch(String),

    #[error("product rule not derived for p = {p}: {detail}")]
    UnsupportedPrime { p: u64, detail: String },

    #[error("index {index} is not in G({p})")]
    IndexNotInGp { index: usize, p: u64 },

    #[error("coefficient systems disagree: {0}")]
    ConsistencyFailure(String),

    #[error("parse error: {0}")]
    Parse(String),
}
