use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix index {0} out of range 0..=3")]
    IndexOutOfRange(usize),
    #[error("dimension mismatch: spinor has {spinor} components, matrix is {matrix}x{matrix}")]
    DimensionMismatch { spinor: usize, matrix: usize },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("density {density:e} at or below the degeneracy floor {floor:e}")]
    DegenerateDensity { density: f64, floor: f64 },
    #[error("transverse profile value {value:e} is not positive at ({x}, {y})")]
    ProfileNonpositive { value: f64, x: f64, y: f64 },
    #[error("charge q must be nonzero")]
    ZeroCharge,
    #[error("quadrature did not converge after {nodes} nodes (last estimate {estimate:e})")]
    NonConvergent { nodes: usize, estimate: f64 },
    #[error("residuals below the rounding floor ({min:e}); convergence order cannot be estimated")]
    FloorDominated { min: f64 },
    #[error("need at least {need} step sizes, got {got}")]
    TooFewSteps { need: usize, got: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
