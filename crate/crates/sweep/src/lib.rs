//! Coupling and system-size sweeps over the Dicke-model measures, scaling
//! fits, and CSV/JSON emission.

pub mod config;
pub mod emit;
pub mod error;
pub mod fit;
pub mod reproduce;
pub mod sweep;

pub use config::{Backend, LambdaScale, OutputFormat, SweepConfig};
pub use error::{Result, SweepError};
pub use fit::{fit_critical_exponents, fit_entropy_scaling, CriticalExponents, ScalingFit};
pub use sweep::{run_sweep, PointError, SweepOutcome};
