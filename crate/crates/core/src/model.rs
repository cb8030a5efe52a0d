//! Single-mode Dicke Hamiltonian in the truncated Fock ⊗ Dicke basis.
//!
//! The Hamiltonian is
//!
//! ```text
//! H = ω0 J_z + ω a†a + λ/√(2j) (a† + a)(J+ + J−),   j = N/2,
//! ```
//!
//! and it commutes with the parity `Π = exp[iπ(a†a + J_z + j)]`. Basis states
//! `|n⟩ ⊗ |j, m⟩` are stored n-major with the Dicke label carried as the
//! excitation number `k = m + j ∈ [0, N]`, so every matrix element is built
//! from integers and the assembled matrix is exactly symmetric.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::SparseHermitian;

/// Largest basis dimension accepted by [`build_basis`].
pub const DEFAULT_MAX_DIMENSION: usize = 1 << 22;

/// Frequencies, coupling and atom number of a Dicke model instance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    omega: f64,
    omega0: f64,
    lambda: f64,
    n_atoms: usize,
    lambda_c: f64,
}

/// Validates and stores the model parameters; `λc = √(ω ω0)/2` is derived.
pub fn make_params(omega: f64, omega0: f64, lambda: f64, n_atoms: usize) -> Result<ModelParams> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::ParameterDomain(format!("field frequency must be positive, got {omega}")));
    }
    if !(omega0 > 0.0 && omega0.is_finite()) {
        return Err(Error::ParameterDomain(format!("atomic splitting must be positive, got {omega0}")));
    }
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::ParameterDomain(format!("coupling must be non-negative, got {lambda}")));
    }
    if n_atoms == 0 {
        return Err(Error::ParameterDomain("need at least one atom".into()));
    }
    Ok(ModelParams { omega, omega0, lambda, n_atoms, lambda_c: (omega * omega0).sqrt() / 2.0 })
}

impl ModelParams {
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn lambda_c(&self) -> f64 {
        self.lambda_c
    }

    /// Pseudo-spin length `j = N/2`.
    pub fn j(&self) -> f64 {
        self.n_atoms as f64 / 2.0
    }

    /// `λ/λc`.
    pub fn lambda_rel(&self) -> f64 {
        self.lambda / self.lambda_c
    }

    pub fn is_resonant(&self) -> bool {
        self.omega == self.omega0
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        make_params(self.omega, self.omega0, lambda, self.n_atoms)
    }

    /// Same model at coupling `ratio · λc`.
    pub fn at_relative_coupling(&self, ratio: f64) -> Result<Self> {
        self.with_lambda(ratio * self.lambda_c)
    }

    pub fn with_n_atoms(&self, n_atoms: usize) -> Result<Self> {
        make_params(self.omega, self.omega0, self.lambda, n_atoms)
    }
}

/// One product state `|n⟩ ⊗ |j, m⟩` with `k = m + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub n: usize,
    pub k: usize,
}

impl BasisState {
    /// Dicke label `m = k − j`.
    pub fn m(&self, n_atoms: usize) -> f64 {
        self.k as f64 - n_atoms as f64 / 2.0
    }

    /// `(−1)^(n + m + j) = (−1)^(n + k)`.
    pub fn parity(&self) -> i8 {
        if (self.n + self.k) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Enumeration of the truncated Fock ⊗ Dicke basis, n-major and m-minor.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisIndex {
    n_max: usize,
    n_atoms: usize,
    entries: Vec<BasisState>,
    parity: Vec<i8>,
}

pub fn build_basis(params: &ModelParams, n_max: usize) -> Result<BasisIndex> {
    BasisIndex::with_capacity(params.n_atoms(), n_max, DEFAULT_MAX_DIMENSION)
}

impl BasisIndex {
    pub fn with_capacity(n_atoms: usize, n_max: usize, capacity: usize) -> Result<Self> {
        let requested = (n_max.checked_add(1))
            .and_then(|a| a.checked_mul(n_atoms + 1))
            .unwrap_or(usize::MAX);
        if requested > capacity {
            return Err(Error::Capacity { requested, capacity });
        }
        let entries: Vec<BasisState> = (0..=n_max)
            .flat_map(|n| (0..=n_atoms).map(move |k| BasisState { n, k }))
            .collect();
        let parity = entries.iter().map(BasisState::parity).collect();
        Ok(Self { n_max, n_atoms, entries, parity })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    /// Number of Dicke states `N + 1`.
    pub fn spin_dim(&self) -> usize {
        self.n_atoms + 1
    }

    /// Number of Fock states `n_max + 1`.
    pub fn fock_dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BasisState] {
        &self.entries
    }

    pub fn parities(&self) -> &[i8] {
        &self.parity
    }

    pub fn state(&self, index: usize) -> BasisState {
        self.entries[index]
    }

    pub fn index_of(&self, n: usize, k: usize) -> Option<usize> {
        (n <= self.n_max && k <= self.n_atoms).then(|| n * (self.n_atoms + 1) + k)
    }

    /// Indices of one parity sector, ascending.
    pub fn sector(&self, parity: i8) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == parity).collect()
    }
}

/// Assembles the Dicke Hamiltonian on `basis`.
///
/// Only the upper triangle is computed; the lower one is its mirror, so the
/// result is bitwise symmetric.
pub fn assemble_hamiltonian(params: &ModelParams, basis: &BasisIndex) -> SparseHermitian {
    let n_atoms = basis.n_atoms();
    let coupling = params.lambda() / (n_atoms as f64).sqrt();
    let mut triplets = Vec::with_capacity(basis.dim() * 5);

    for (row, state) in basis.entries().iter().enumerate() {
        let diag = params.omega0() * state.m(n_atoms) + params.omega() * state.n as f64;
        triplets.push((row, row, diag));
        if coupling == 0.0 {
            continue;
        }
        // a† moves n -> n+1; both J± directions. The a-lowering partners are
        // the mirrored entries.
        let n_up = state.n + 1;
        let boson = (n_up as f64).sqrt();
        if state.k < n_atoms {
            if let Some(col) = basis.index_of(n_up, state.k + 1) {
                let spin = (((n_atoms - state.k) * (state.k + 1)) as f64).sqrt();
                let v = coupling * boson * spin;
                triplets.push((row, col, v));
                triplets.push((col, row, v));
            }
        }
        if state.k > 0 {
            if let Some(col) = basis.index_of(n_up, state.k - 1) {
                let spin = ((state.k * (n_atoms - state.k + 1)) as f64).sqrt();
                let v = coupling * boson * spin;
                triplets.push((row, col, v));
                triplets.push((col, row, v));
            }
        }
    }
    SparseHermitian::from_triplets(basis.dim(), triplets)
        .expect("Dicke Hamiltonian assembly is symmetric by construction")
}

/// Diagonal parity operator `Π` on `basis`.
pub fn parity_operator(basis: &BasisIndex) -> SparseHermitian {
    let diag: Vec<f64> = basis.parities().iter().map(|&p| p as f64).collect();
    SparseHermitian::diagonal(&diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_derive_critical_coupling() {
        let p = make_params(1.0, 1.0, 0.5, 8).unwrap();
        assert_eq!(p.lambda_c(), 0.5);
        assert_eq!(p.lambda_rel(), 1.0);
        assert_eq!(make_params(4.0, 1.0, 1.0, 16).unwrap().lambda_c(), 1.0);
        assert_eq!(make_params(1.0, 1.0, 0.0, 2).unwrap().lambda_rel(), 0.0);
    }

    #[test]
    fn params_reject_bad_domain() {
        assert!(matches!(make_params(0.0, 1.0, 0.1, 2), Err(Error::ParameterDomain(_))));
        assert!(matches!(make_params(1.0, -1.0, 0.1, 2), Err(Error::ParameterDomain(_))));
        assert!(matches!(make_params(1.0, 1.0, -0.1, 2), Err(Error::ParameterDomain(_))));
        assert!(matches!(make_params(1.0, 1.0, 0.1, 0), Err(Error::ParameterDomain(_))));
    }

    #[test]
    fn basis_enumeration_and_parity() {
        let p = make_params(1.0, 1.0, 0.0, 1).unwrap();
        let b = build_basis(&p, 1).unwrap();
        let ms: Vec<(usize, f64)> = b.entries().iter().map(|s| (s.n, s.m(1))).collect();
        assert_eq!(ms, vec![(0, -0.5), (0, 0.5), (1, -0.5), (1, 0.5)]);
        assert_eq!(b.parities(), &[1, -1, -1, 1]);

        let p2 = make_params(1.0, 1.0, 0.0, 2).unwrap();
        assert_eq!(build_basis(&p2, 0).unwrap().parities(), &[1, -1, 1]);

        let p8 = make_params(1.0, 1.0, 0.0, 8).unwrap();
        assert_eq!(build_basis(&p8, 40).unwrap().dim(), 369);
    }

    #[test]
    fn capacity_is_enforced() {
        let err = BasisIndex::with_capacity(8, 100, 500).unwrap_err();
        assert_eq!(err, Error::Capacity { requested: 909, capacity: 500 });
    }

    #[test]
    fn coupling_element_for_single_atom() {
        let p = make_params(1.0, 1.0, 0.3, 1).unwrap();
        let b = build_basis(&p, 1).unwrap();
        let h = assemble_hamiltonian(&p, &b);
        let from = b.index_of(0, 1).unwrap();
        let to = b.index_of(1, 0).unwrap();
        assert!((h.get(from, to) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn decoupled_hamiltonian_is_diagonal() {
        let p = make_params(1.0, 1.0, 0.0, 8).unwrap();
        let b = build_basis(&p, 5).unwrap();
        let h = assemble_hamiltonian(&p, &b);
        assert!(h.triplets().all(|(r, c, _)| r == c));
        let min = h.diagonal_values().into_iter().fold(f64::INFINITY, f64::min);
        assert_eq!(min, -4.0);
    }

    #[test]
    fn parity_squares_to_identity() {
        let p = make_params(1.0, 1.0, 0.0, 1).unwrap();
        let b = build_basis(&p, 1).unwrap();
        let pi = parity_operator(&b);
        assert_eq!(pi.diagonal_values(), vec![1.0, -1.0, -1.0, 1.0]);
        let sq = pi.mul_dense(&pi);
        assert_eq!(sq, nalgebra::DMatrix::identity(4, 4));
    }
}
