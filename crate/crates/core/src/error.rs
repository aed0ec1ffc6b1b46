use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("variable index must be at least 1")]
    ZeroVariable,

    #[error("exponent must be at least 1")]
    ZeroExponent,

    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed scalar domains: {0} and {1}")]
    MixedDomains(String, String),

    #[error("mismatched algebras: {0} and {1}")]
    MismatchedAlgebras(String, String),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("basis index {index} out of range for {algebra}")]
    IndexOutOfRange { index: usize, algebra: String },

    #[error("polynomial is not multihomogeneous")]
    NotHomogeneous,

    #[error("the zero polynomial has no multidegree")]
    ZeroPolynomial,

    #[error("variable x{0} is not assigned")]
    UnassignedVariable(u32),

    #[error("identity testing requires an infinite field; got {0}")]
    FiniteFieldIdentity(String),

    #[error("search space {size} exceeds the bound {bound}")]
    SearchSpaceTooLarge { size: u128, bound: u128 },

    #[error("{0} requires a finite-dimensional algebra")]
    InfiniteAlgebra(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Machine-readable tag used in JSON output.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::ZeroVariable => "zero_variable",
            Error::ZeroExponent => "zero_exponent",
            Error::NotPrime(_) => "not_prime",
            Error::DivisionByZero => "division_by_zero",
            Error::MixedDomains(..) => "mixed_domains",
            Error::MismatchedAlgebras(..) => "mismatched_algebras",
            Error::ZeroDimension => "zero_dimension",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NotHomogeneous => "not_homogeneous",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::UnassignedVariable(_) => "unassigned_variable",
            Error::FiniteFieldIdentity(_) => "finite_field_identity",
            Error::SearchSpaceTooLarge { .. } => "search_space_too_large",
            Error::InfiniteAlgebra(_) => "infinite_algebra",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
