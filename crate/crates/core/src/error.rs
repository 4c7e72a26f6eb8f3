use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: u64, len: usize },

    #[error("series diverges: z = {z} is not above the abscissa of convergence {abscissa}")]
    Divergent { z: f64, abscissa: f64 },

    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported sequence variant: {0}")]
    UnsupportedVariant(String),

    #[error("enumeration budget of {budget} iterations exceeded; try the recursive method")]
    BudgetExceeded { budget: u64 },

    #[error("count does not fit in 64 bits")]
    Overflow,

    #[error("ambiguous multiplicity: growth exponents {0} and {1} differ by less than 1e-12")]
    AmbiguousMultiplicity(f64, f64),

    #[error("dominance violation: {0}")]
    DominanceViolation(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("pole order mismatch: {0}")]
    PoleOrderMismatch(String),

    #[error("insufficient data: need at least {needed} usable rows, found {found}")]
    InsufficientData { needed: usize, found: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite result: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
