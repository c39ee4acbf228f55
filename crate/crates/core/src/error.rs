use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hermiticity error: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { defect: f64, tolerance: f64 },
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("hyperbolic-out-of-domain: {0}")]
    OutOfDomain(String),
    #[error("degenerate-reduction: {0}")]
    DegenerateReduction(String),
    #[error("pipeline-indeterminate: {0}")]
    PipelineIndeterminate(String),
    #[error("condition-violated: {0}")]
    ConditionViolated(String),
    #[error("cutoff-overflow: {0}")]
    CutoffOverflow(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::NotHermitian { .. } => "hermiticity",
            Error::NonFinite(_) => "non-finite",
            Error::Singular(_) => "singular",
            Error::OutOfDomain(_) => "hyperbolic-out-of-domain",
            Error::DegenerateReduction(_) => "degenerate-reduction",
            Error::PipelineIndeterminate(_) => "pipeline-indeterminate",
            Error::ConditionViolated(_) => "condition-violated",
            Error::CutoffOverflow(_) => "cutoff-overflow",
            Error::NoConvergence(_) => "no-convergence",
        }
    }
}

pub(crate) fn dim_err(what: &str, a: (usize, usize), b: (usize, usize)) -> Error {
    Error::Dimension(format!("{what}: {}x{} vs {}x{}", a.0, a.1, b.0, b.1))
}
