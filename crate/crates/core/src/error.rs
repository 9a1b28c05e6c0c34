use thiserror::Error;

use crate::scalar::ScalarError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),

    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("duplicate generator `{name}` at {line}:{col}")]
    DuplicateGenerator { name: String, line: usize, col: usize },
    #[error("unknown symbol `{name}` at {line}:{col}")]
    UnknownSymbol { name: String, line: usize, col: usize },
    #[error("unsupported presentation: {0}")]
    Unsupported(String),

    #[error("operation needs a system without lower-order terms")]
    NotScalarClosed,
    #[error("rewriting exceeded the step budget of {0}")]
    StepBudgetExceeded(u64),
    #[error("negative power of non-invertible element: {0}")]
    NegativePowerOfNonInvertible(String),
    #[error("generator `{var}` cannot be inverted: {reason}")]
    NotInvertible { var: String, reason: String },

    #[error("wrong presentation kind: expected {expected}, found {found}")]
    WrongKind { expected: String, found: String },
    #[error("the zero element is not allowed here")]
    ZeroElement,
    #[error("element is not monotone")]
    NotMonotone,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("internal disagreement: {0}")]
    InternalDisagreement(String),

    #[error("not an automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("conjugation does not stabilize the algebra: {generator} -> {image}")]
    NotStabilizing { generator: String, image: String },
    #[error("automorphism is not of invertible triangular shape: {0}")]
    NotInvertibleShape(String),
    #[error("automorphism is not triangular: {0}")]
    NotTriangular(String),

    #[error("search box too large: {unknowns} unknowns exceeds cap {cap}")]
    BoxTooLarge { unknowns: usize, cap: usize },
    #[error("witness does not induce the derivation: {0}")]
    UnverifiedWitness(String),
    #[error("identity fails: {0}")]
    IdentityFails(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Errors that mean "the mathematics says no" rather than "bad input".
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            Error::NotStabilizing { .. }
                | Error::NotMonotone
                | Error::NotHomogeneous
                | Error::NotInvertibleShape(_)
                | Error::NotTriangular(_)
                | Error::InvalidAutomorphism(_)
                | Error::UnverifiedWitness(_)
                | Error::IdentityFails(_)
                | Error::ZeroElement
                | Error::InternalDisagreement(_)
        )
    }
}
