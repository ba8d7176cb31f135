use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain of the requested function.
    #[error("{0}")]
    Domain(String),

    #[error("non-finite argument {0}")]
    NonFinite(f64),

    /// The polynomial ODE did not reduce to a consistent square system.
    #[error("pencil assembly for set {set_id}: {reason}")]
    PencilAssembly { set_id: u8, reason: String },

    #[error("pencil for set {set_id} has a complex eigenvalue {re} + {im}i")]
    ComplexEigenvalue { set_id: u8, re: f64, im: f64 },

    #[error("solution count mismatch: expected {expected}, found {found}")]
    CountMismatch { expected: usize, found: usize },

    #[error("zero eigenvector for energy {0}")]
    ZeroEigenvector(f64),

    #[error("residue quadratic has negative discriminant {0}")]
    NegativeDiscriminant(f64),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
}
