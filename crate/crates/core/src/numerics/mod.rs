//! Configurable-precision arithmetic and the dense eigensolvers used by the
//! rest of the crate.

mod eigen;
mod matrix;
mod real;

pub use eigen::{
    generalized_eigenvalues, solve_antisymmetric_pairs, solve_generalized_symmetric,
    solve_symmetric, symmetric_eigen, EigenPair,
};
pub use matrix::{dot, norm2, AntisymMatrix, SymMatrix};
pub use real::{binomial, factorials, from_u128, Dd, Mp, Mp224, Mp352, Real, Tier};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error(
        "overlap matrix is not positive definite (pivot {index}); raise precision or shrink omega"
    )]
    NotPositiveDefinite { index: usize },
    #[error("{stage} did not converge after {iterations} iterations")]
    NoConvergence {
        stage: &'static str,
        iterations: usize,
    },
    #[error("eigen-residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("singular values at position {index} do not pair (gap {gap:e})")]
    PairingFailure { index: usize, gap: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot extract {requested} roots from a dimension-{dimension} problem")]
    InvalidRootCount { requested: usize, dimension: usize },
    #[error("invalid precision configuration: {0}")]
    InvalidConfig(String),
}

/// Precision policy shared by every solver.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionConfig {
    /// Decimal digits of scalar precision.
    pub working_digits: u32,
    /// Accepted eigen-residual, relative to the Frobenius norm of the operator.
    pub eig_residual_tol: f64,
    /// Relative threshold under which spectrum values count as zero.
    pub cleanup_tol: f64,
}

impl PrecisionConfig {
    /// Default tolerances for a given digit count: residuals to half the
    /// working digits, cleanup six digits above the rounding level.
    pub fn with_digits(working_digits: u32) -> Result<Self, NumericsError> {
        let d = working_digits as f64;
        let cfg = PrecisionConfig {
            working_digits,
            eig_residual_tol: 10f64.powf(-(d / 2.0).floor()),
            cleanup_tol: 10f64.powf(-(d - 6.0)),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if self.working_digits < 15 {
            return Err(NumericsError::InvalidConfig(format!(
                "working_digits must be >= 15, got {}",
                self.working_digits
            )));
        }
        if Tier::for_digits(self.working_digits).is_none() {
            return Err(NumericsError::InvalidConfig(format!(
                "working_digits {} exceeds the widest supported tier (106)",
                self.working_digits
            )));
        }
        if !(0.0 < self.cleanup_tol
            && self.cleanup_tol < self.eig_residual_tol
            && self.eig_residual_tol < 1.0)
        {
            return Err(NumericsError::InvalidConfig(format!(
                "need 0 < cleanup_tol ({:e}) < eig_residual_tol ({:e}) < 1",
                self.cleanup_tol, self.eig_residual_tol
            )));
        }
        Ok(())
    }

    pub fn tier(&self) -> Tier {
        Tier::for_digits(self.working_digits).expect("validated precision config")
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig::with_digits(30).expect("30 digits is a valid tier")
    }
}
