use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("rational must be positive")]
    NonPositive,
    #[error("expected an even-length expansion, got {0}")]
    NotEven(String),
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
    #[error("partial quotient too large for this operation")]
    TooLarge,
    #[error("digit vector has length {got}, expansion has {expected} quotients")]
    LengthMismatch { expected: usize, got: usize },
    #[error("digits {0} are not admissible")]
    NotAdmissible(String),
    #[error("{n} lies outside Z(a) = [{lo}, {hi})")]
    OutOfRange { n: String, lo: String, hi: String },
    #[error("{0} is not a Christoffel word")]
    NotChristoffel(String),
    #[error("not a perfect matching of this snake graph")]
    NotPerfectMatching,
    #[error("not an order ideal of this fence")]
    NotIdeal,
}
