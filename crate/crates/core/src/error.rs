use thiserror::Error;

/// Errors surfaced by solvers, quadrature and model evaluation.
#[derive(Debug, Error)]
pub enum CwkbError {
    /// A radius or parameter outside the mathematical domain of the model.
    #[error("domain error: {0}")]
    Domain(String),

    /// An integrand was evaluated where its defining inequality fails,
    /// e.g. E <= V_eff inside an interval that was declared classically allowed.
    #[error("inconsistent bracket: {0}")]
    InconsistentBracket(String),

    /// The requested operation needs a different confinement regime.
    #[error("regime error: {0}")]
    Regime(String),

    /// No sign change of the quantization residual inside the search window.
    #[error("no eigenvalue in window [{lo}, {hi}] for n_r = {nr}")]
    NoEigenvalueInWindow { lo: f64, hi: f64, nr: u32 },

    /// Quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    QuadratureConvergence(String),

    /// A precondition on caller-supplied data failed.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Interval left after truncating away turning points is unusable.
    #[error("interval too narrow after truncation: {0}")]
    IntervalTooNarrow(String),
}

pub type Result<T> = std::result::Result<T, CwkbError>;
