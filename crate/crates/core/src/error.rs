use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid coefficient `{spec}`: {reason}")]
    InvalidCoefficient { spec: String, reason: String },

    #[error("dimension mismatch: expected {expected} cells, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("domain assumption violated: {0}")]
    DomainAssumption(String),

    #[error("monotonicity assumption violated: {0}")]
    Monotonicity(String),

    #[error("time step {dt} exceeds positivity bound {bound}")]
    StepSize { dt: f64, bound: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("conservation failure at t={t}: relative mass drift {drift:e} > {tol:e}")]
    Conservation { t: f64, drift: f64, tol: f64 },

    #[error("invariant breach: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}

impl Error {
    /// Process exit status for command-line front ends.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidCoefficient { .. } | Error::Json(_) => 2,
            Error::Dimension { .. }
            | Error::DomainAssumption(_)
            | Error::Monotonicity(_)
            | Error::StepSize { .. }
            | Error::Numerical(_) => 3,
            Error::Conservation { .. } | Error::Invariant(_) => 4,
            Error::Io(_) => 1,
        }
    }
}
