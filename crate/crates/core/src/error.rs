use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the special functions, quadrature rules, solvers and
/// the scattering layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of a special function (e.g. E1 at 0 or on
    /// its branch cut).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A kernel or forcing function produced NaN or infinity.
    #[error("non-finite evaluation at x = {x}, t = {t}")]
    Evaluation { x: f64, t: f64 },

    /// |Δ(λ)| fell below the configured tolerance: λ is (numerically) a
    /// characteristic value of the kernel.
    #[error("SingularDeterminant: |D(lambda)| = {magnitude:e} is below tolerance {tolerance:e}")]
    SingularDeterminant { magnitude: f64, tolerance: f64 },

    /// Row reduction found no usable pivot.
    #[error("SingularMatrix: pivot {pivot:e} in column {column} is below {threshold:e}")]
    SingularMatrix {
        column: usize,
        pivot: f64,
        threshold: f64,
    },

    /// The system factored, but its reciprocal condition number is so small
    /// that the solution carries no significant digits.
    #[error("SingularMatrix: reciprocal condition number {rcond:e} is below {threshold:e}")]
    IllConditioned { rcond: f64, threshold: f64 },

    #[error("DivergenceDetected: iterate norm grew by a factor {growth:e} after {iterations} iterations")]
    DivergenceDetected { growth: f64, iterations: usize },

    /// Evaluation at a point where the quantity is genuinely singular
    /// (Coulomb potential at the origin, Green's function at zero separation).
    #[error("singular point: {0}")]
    SingularPoint(String),
}

impl Error {
    /// True for failures caused by a (near-)singular linear problem rather
    /// than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularDeterminant { .. }
                | Error::SingularMatrix { .. }
                | Error::IllConditioned { .. }
                | Error::DivergenceDetected { .. }
                | Error::Evaluation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(value: Complex64, x: f64, t: f64) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Evaluation { x, t })
    }
}
