use thiserror::Error;

/// Errors raised by the geometry routines.
///
/// Each variant carries a stable name (see [`Error::name`]) used by the
/// command-line front end when reporting failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),

    #[error("unsupported triple: {0}")]
    UnsupportedTriple(String),

    #[error("invalid state: {0}")]
    State(String),

    #[error("oracle intractable: {0}")]
    OracleIntractable(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("events are not causally related: {0}")]
    Causality(String),

    #[error("Krein-null vector: |(psi, psi)| = {0:e}")]
    KreinNull(f64),

    #[error("matrix is not Hermitian: {0}")]
    NonHermitian(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "DimensionError",
            Error::UnsupportedAlgebra(_) => "UnsupportedAlgebra",
            Error::UnsupportedTriple(_) => "UnsupportedTriple",
            Error::State(_) => "StateError",
            Error::OracleIntractable(_) => "OracleIntractable",
            Error::Domain(_) => "DomainError",
            Error::Causality(_) => "CausalityError",
            Error::KreinNull(_) => "KreinNullError",
            Error::NonHermitian(_) => "NonHermitianError",
            Error::Internal(_) => "InternalError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
