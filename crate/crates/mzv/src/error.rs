use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A word did not begin with 1 and end with 0.
    #[error("word {0:?} is not convergent (must begin with 1 and end with 0)")]
    NotConvergent(String),

    /// Continued-fraction reconstruction could not single out a rational at
    /// the available precision. Callers normally respond by raising the
    /// working precision and retrying.
    #[error(
        "ambiguous rational reconstruction (value ≈ {value}, error 2^{err_log2:.1}, max denominator {max_den})"
    )]
    AmbiguousReconstruction {
        value: String,
        err_log2: f64,
        max_den: BigInt,
    },

    /// The rho matrix at some weight is singular: the chosen generating set
    /// is not a basis.
    #[error("the chosen set is not a basis: rho matrix is singular at weight {0}")]
    NotABasis(u32),

    /// The number of basis monomials at a weight does not match the
    /// conjectural dimension d_N.
    #[error("at weight {weight}: {found} basis monomials, but dimension is {expected}")]
    DimensionMismatch {
        weight: u32,
        found: usize,
        expected: usize,
    },

    /// A combinatorial expansion would exceed the configured weight cap.
    #[error("weight {0} exceeds the configured cap {1}")]
    CapExceeded(u32, u32),

    /// The requested error target could not be met within the precision cap.
    #[error("precision target unreachable within {max_digits} digits")]
    PrecisionUnreachable { max_digits: u32 },

    /// Textual input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A precondition on arguments was violated.
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
