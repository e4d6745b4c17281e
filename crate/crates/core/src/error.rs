use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A level crossing is touched tangentially at a field extremum, so the
    /// crossing time and sweep rate are undefined.
    #[error("degenerate crossing geometry on boundary line {line}")]
    DegenerateGeometry { line: String },

    /// An iterative method stopped before reaching its tolerance.
    #[error("{what} did not converge: achieved {achieved:e}, requested {requested:e}")]
    Convergence {
        what: &'static str,
        achieved: f64,
        requested: f64,
    },

    /// Norm drift of a time-domain run exceeded the acceptance bound.
    #[error("norm drift {drift:e} exceeds {limit:e} at dt = {dt:e} us; halve the step size")]
    StepSize { drift: f64, limit: f64, dt: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
