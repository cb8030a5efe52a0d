//! Ground-state entanglement of the single-mode Dicke model.
//!
//! Finite `N` goes through exact diagonalization in the truncated
//! Fock ⊗ Dicke basis ([`model`], [`eigen`]) followed by reduced density
//! matrices and entanglement measures ([`entanglement`], [`ipr`],
//! [`meyer_wallach`]). The `N → ∞` limit is handled by closed forms in
//! [`thermo`]; [`perturbative`] holds the weak- and strong-coupling limits.

pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod ipr;
mod lanczos;
pub mod meyer_wallach;
pub mod model;
pub mod perturbative;
pub mod report;
pub mod sparse;
pub mod thermo;

pub use eigen::{converge_cutoff, converge_cutoff_with, ground_state, ground_state_with, CutoffPolicy, GroundState, SolverOptions};
pub use error::{Error, Result};
pub use model::{assemble_hamiltonian, build_basis, make_params, parity_operator, BasisIndex, ModelParams};
pub use report::{Measure, MeasureReport, SystemSize};
pub use sparse::SparseHermitian;
