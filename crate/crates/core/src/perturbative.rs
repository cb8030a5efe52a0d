//! Weak- and strong-coupling reference results for the atom-field entropy.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::model::{BasisIndex, ModelParams};

/// Upper end of the `λ/λc` range where the weak-coupling entropy tracks
/// exact diagonalization.
pub const WEAK_COUPLING_VALIDITY: f64 = 0.4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbativeResult {
    /// `λ/(ω + ω0)`.
    pub sigma: f64,
    /// Entropy in bits.
    pub s_pert: f64,
    /// Largest `λ/λc` for which the result is trusted.
    pub validity_hint: f64,
}

fn binary_entropy(p: f64) -> f64 {
    // `+ 0.0` turns the −0 of a pure state into +0
    [p, 1.0 - p].iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum::<f64>() + 0.0
}

/// Second-order result: binary entropy of `1/(1 + σ²)`, independent of `N`.
pub fn perturbative_entropy(params: &ModelParams) -> PerturbativeResult {
    let sigma = params.lambda() / (params.omega() + params.omega0());
    let p = 1.0 / (1.0 + sigma * sigma);
    PerturbativeResult { sigma, s_pert: binary_entropy(p), validity_hint: WEAK_COUPLING_VALIDITY }
}

/// Entropy of the `λ → ∞` ground state: one bit.
pub fn strong_coupling_entropy_limit() -> f64 {
    1.0
}

/// Smallest cutoff holding the coherent-state Poisson tail of the limiting
/// state: `|α|² + 6|α|`, `α = √(2j) λ/ω`.
pub fn strong_coupling_cutoff(params: &ModelParams) -> usize {
    let alpha_sq = params.n_atoms() as f64 * (params.lambda() / params.omega()).powi(2);
    (alpha_sq + 6.0 * alpha_sq.sqrt()).ceil() as usize
}

/// Dicke-basis amplitudes of the lowest `J_x` eigenstate (`m_x = −j`),
/// indexed by `k = m + j`.
pub fn jx_lowest_state(n_atoms: usize) -> Vec<f64> {
    let dim = n_atoms + 1;
    let mut jx = DMatrix::zeros(dim, dim);
    for k in 0..n_atoms {
        // ⟨k+1| J_x |k⟩ = ½ √((N − k)(k + 1))
        let v = 0.5 * (((n_atoms - k) * (k + 1)) as f64).sqrt();
        jx[(k + 1, k)] = v;
        jx[(k, k + 1)] = v;
    }
    let eig = SymmetricEigen::new(jx);
    let idx = eig.eigenvalues.imin();
    eig.eigenvectors.column(idx).iter().copied().collect()
}

/// Limiting ground state for `λ → ∞`, the positive-parity combination of
/// `|α⟩ ⊗ |j, m_x = −j⟩` and its parity image `|−α⟩ ⊗ |j, m_x = +j⟩`, with
/// `α = √(2j) λ/ω`. Built in `basis` and renormalised after truncation.
pub fn strong_coupling_state(params: &ModelParams, basis: &BasisIndex) -> Vec<f64> {
    let alpha = (params.n_atoms() as f64).sqrt() * params.lambda() / params.omega();
    let spin = jx_lowest_state(basis.n_atoms());

    // coherent amplitudes e^{−α²/2} αⁿ/√n!, by recurrence
    let mut coherent = Vec::with_capacity(basis.fock_dim());
    let mut c = (-0.5 * alpha * alpha).exp();
    for n in 0..basis.fock_dim() {
        coherent.push(c);
        c *= alpha / ((n + 1) as f64).sqrt();
    }

    let mut state: Vec<f64> = basis
        .entries()
        .iter()
        .zip(basis.parities())
        .map(|(s, &p)| {
            let lobe = coherent[s.n] * spin[s.k];
            // (1 + Π)/2 keeps only the positive-parity part
            if p > 0 {
                lobe
            } else {
                0.0
            }
        })
        .collect();
    let norm = state.iter().map(|x| x * x).sum::<f64>().sqrt();
    state.iter_mut().for_each(|x| *x /= norm);
    state
}
