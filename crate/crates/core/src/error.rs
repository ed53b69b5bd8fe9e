use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("negative exponent requires laurent mode")]
    NegativeExponent,
    #[error("laurent polynomial not allowed here")]
    LaurentNotAllowed,
    #[error("substitution image for an inverted variable is zero")]
    ZeroImageForInverse,
    #[error("input vector is not primitive (gcd {gcd})")]
    NotPrimitive { gcd: u64 },
    #[error("zero vector has no normal form in this family")]
    ZeroKappa,
    #[error("potential must be non-constant")]
    ConstantPotential,
    #[error("zero polynomial has no leading form")]
    ZeroPolynomial,
    #[error("argument is not homogeneous for this valuation")]
    NonHomogeneous,
    #[error("point does not lie on the hypersurface")]
    PointNotOnHypersurface,
    #[error("point is a singular point of the hypersurface")]
    SingularPoint,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("enumeration needs {needed} tuples, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("this solution group is infinite; refusing to enumerate")]
    InfiniteGroup,
    #[error("modulus mismatch: {0}")]
    ModulusMismatch(String),
    #[error("unsupported field family for this operation")]
    UnsupportedFamily,
    #[error("middle sides of the two facts do not match")]
    MiddleMismatch,
    #[error("composed witness failed verification; this is a bug")]
    CompositionFailed,
    #[error("exponent overflow")]
    ExponentOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
