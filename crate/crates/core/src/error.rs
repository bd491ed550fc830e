use thiserror::Error;

/// Errors raised by the analysis routines.
///
/// Each variant carries a stable snake-case code (see [`Error::code`]) that
/// the command-line front end prints and that reports embed verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("kappa_undefined: the quadric is nondegenerate at this point")]
    KappaUndefined,
    #[error("corank3_unsupported: corank {0} fibers are not handled")]
    Corank3Unsupported(usize),
    #[error("not_singular_on_D1: gradient of det A does not vanish at the point")]
    NotSingularOnD1,
    #[error("wrong_corank: expected corank {expected}, found {found}")]
    WrongCorank { expected: usize, found: usize },
    #[error("wrong_base_dim: expected base dimension {expected}, found {found}")]
    WrongBaseDim { expected: usize, found: usize },
    #[error("char2_unsupported: characteristic 2 breaks the polar-form convention")]
    Char2Unsupported,
    #[error("degenerate_point: the point lies on the discriminant divisor")]
    DegeneratePoint,
    #[error("not_prime: {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("square_parameter: {0} is a square in the base field")]
    SquareParameter(String),
    #[error("dimension_mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse_error: {0}")]
    Parse(String),
    #[error("validation_error: {0}")]
    Validation(String),
    #[error("unsupported_variety: {0}")]
    UnsupportedVariety(String),
    #[error("no_solution: {0}")]
    NoSolution(String),
}

impl Error {
    /// Stable identifier used in reports and exit messages.
    pub fn code(&self) -> &'static str {
        match self {
            Error::KappaUndefined => "kappa_undefined",
            Error::Corank3Unsupported(_) => "corank3_unsupported",
            Error::NotSingularOnD1 => "not_singular_on_D1",
            Error::WrongCorank { .. } => "wrong_corank",
            Error::WrongBaseDim { .. } => "wrong_base_dim",
            Error::Char2Unsupported => "char2_unsupported",
            Error::DegeneratePoint => "degenerate_point",
            Error::NotOddPrime(_) => "not_prime",
            Error::SquareParameter(_) => "square_parameter",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::Parse(_) => "parse_error",
            Error::Validation(_) => "validation_error",
            Error::UnsupportedVariety(_) => "unsupported_variety",
            Error::NoSolution(_) => "no_solution",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
