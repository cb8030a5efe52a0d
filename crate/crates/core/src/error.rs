use thiserror::Error;

/// Errors raised across the model, solver and measure layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("basis dimension {requested} exceeds capacity {capacity}")]
    Capacity { requested: usize, capacity: usize },

    #[error("eigensolver did not converge (best residual {best_residual:e} after {iterations} iterations)")]
    Solver { best_residual: f64, iterations: usize },

    #[error("boson cutoff did not converge before n_max = {n_max}; energy sequence {energies:?}")]
    CutoffConvergence { n_max: usize, energies: Vec<f64> },

    #[error("numerical integrity check failed: {0}")]
    NumericalIntegrity(String),

    #[error("wrong phase: {0}")]
    PhaseDomain(String),

    #[error("quadrature grid does not cover the wavefunction (boundary/max = {ratio:e})")]
    DomainCoverage { ratio: f64 },

    #[error("invalid input: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
