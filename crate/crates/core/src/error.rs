use thiserror::Error;

/// Failures raised by the partner and state machinery.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A mode count of zero, or a matrix whose side is not `2 * n_modes`.
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The eigen-solve could not produce a consistent symplectic spectrum.
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    /// The vectors do not span a symplectic subspace (Gram matrix singular or
    /// too badly conditioned).
    #[error("degenerate subspace: {0}")]
    DegenerateSubspace(String),

    #[error("covariance matrix is singular or not positive definite")]
    SingularCovariance,

    #[error("basis is not symplectically orthonormal (residual {residual:.3e})")]
    NonOrthonormalBasis { residual: f64 },

    /// A pure-state construction was handed a mixed state.
    #[error("state is not pure (purity {purity:.12})")]
    WrongPurity { purity: f64 },

    #[error("state is unphysical (minimum symplectic eigenvalue {min_nu:.12})")]
    Unphysical { min_nu: f64 },

    #[error("subsystems are not symplectically orthogonal (residual {residual:.3e})")]
    NotOrthogonal { residual: f64 },

    /// Fermionic two-form that does not describe a pure Gaussian state.
    #[error("fermionic state is not pure: {0}")]
    NotPure(String),

    /// A result violated a bound that holds for every valid input.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
