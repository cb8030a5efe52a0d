//! Average single-qubit linear entropy (Meyer-Wallach `Q`) of a qubit
//! register, optionally entangled with an environment that is traced out.
//!
//! Amplitude index layout: `env · 2^n + Σ_k b_k 2^k`, so qubit `k` is bit `k`
//! of the register index.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 12;

/// Per-qubit purities `Tr ρ_k²`.
pub fn qubit_purities(amplitudes: &[Complex64], n_qubits: usize, env_dim: usize) -> Result<Vec<f64>> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Domain(format!("register size must be in 1..={MAX_QUBITS}, got {n_qubits}")));
    }
    let reg = 1usize << n_qubits;
    if env_dim == 0 || amplitudes.len() != reg * env_dim {
        return Err(Error::Domain(format!(
            "expected {} amplitudes, got {}",
            reg * env_dim,
            amplitudes.len()
        )));
    }
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Domain(format!("state is not normalised (norm² = {norm})")));
    }

    Ok((0..n_qubits)
        .map(|k| {
            let bit = 1usize << k;
            let (mut p0, mut p1) = (0.0, 0.0);
            let mut coherence = Complex64::new(0.0, 0.0);
            for env in 0..env_dim {
                let block = &amplitudes[env * reg..(env + 1) * reg];
                for (idx, a) in block.iter().enumerate() {
                    if idx & bit == 0 {
                        let b = block[idx | bit];
                        p0 += a.norm_sqr();
                        p1 += b.norm_sqr();
                        coherence += a * b.conj();
                    }
                }
            }
            p0 * p0 + p1 * p1 + 2.0 * coherence.norm_sqr()
        })
        .collect())
}

/// `Q = 2 [1 − (1/n) Σ_k Tr ρ_k²]` for a pure `n`-qubit state.
pub fn meyer_wallach_q(amplitudes: &[Complex64]) -> Result<f64> {
    let len = amplitudes.len();
    if !len.is_power_of_two() {
        return Err(Error::Domain(format!("register length {len} is not a power of two")));
    }
    meyer_wallach_q_with_environment(amplitudes, len.trailing_zeros() as usize, 1)
}

/// Same average, with the first factor of dimension `env_dim` traced out.
pub fn meyer_wallach_q_with_environment(amplitudes: &[Complex64], n_qubits: usize, env_dim: usize) -> Result<f64> {
    let purities = qubit_purities(amplitudes, n_qubits, env_dim)?;
    let mean = purities.iter().sum::<f64>() / n_qubits as f64;
    Ok(2.0 * (1.0 - mean))
}
