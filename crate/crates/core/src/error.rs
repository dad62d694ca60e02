use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("polynomials live over different fields: {0} vs {1}")]
    FieldMismatch(String, String),

    /// The computation is well defined but not supported at desk scale
    /// (number-field residue fields, infinite residue fields, ...).
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("model is not a rational elliptic surface: weighted Euler sum is {sum}, expected 12")]
    NotRationalElliptic { sum: i64 },

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
