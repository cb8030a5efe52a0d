//! Restarted Lanczos iteration with full reorthogonalization for the lowest
//! eigenpair of a real symmetric sparse matrix.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sparse::SparseHermitian;

const START_SEED: u64 = 0x5eed_d1c4e;

pub(crate) struct LanczosOutcome {
    pub value: f64,
    pub vector: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Lowest Ritz pair of the tridiagonal matrix `(alpha, beta)`.
fn lowest_ritz(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let m = alpha.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (idx, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty tridiagonal");
    (value, eig.eigenvectors.column(idx).iter().copied().collect())
}

/// Lowest eigenpair of `op` with true residual `‖Ax − θx‖ ≤ tol·|θ|`.
pub(crate) fn lowest_eigenpair(
    op: &SparseHermitian,
    tol: f64,
    krylov_dim: usize,
    max_restarts: usize,
) -> Result<LanczosOutcome> {
    let dim = op.dim();
    let m = krylov_dim.clamp(2, dim.max(2)).min(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut start: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    normalize(&mut start);

    let mut best_residual = f64::INFINITY;
    let mut iterations = 0;
    let mut w = vec![0.0; dim];

    for _ in 0..=max_restarts {
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alpha = Vec::with_capacity(m);
        let mut beta = Vec::with_capacity(m);

        for i in 0..m {
            op.matvec_into(&basis[i], &mut w);
            iterations += 1;
            let a = dot(&basis[i], &w);
            alpha.push(a);
            // two passes of classical Gram-Schmidt against the whole basis
            for _ in 0..2 {
                for v in &basis {
                    let c = dot(v, &w);
                    axpy(-c, v, &mut w);
                }
            }
            let b = normalize(&mut w);
            if i + 1 == m || b < 1e-13 {
                break;
            }
            if (i + 1) % 8 == 0 {
                // residual estimate of the current Ritz pair: β_i·|y_last|
                let (theta, y) = lowest_ritz(&alpha, &beta);
                if (b * y[y.len() - 1]).abs() <= 0.1 * tol * theta.abs() {
                    break;
                }
            }
            beta.push(b);
            basis.push(w.clone());
        }

        let k = alpha.len();
        let (theta, y) = lowest_ritz(&alpha, &beta[..k - 1]);
        let mut x = vec![0.0; dim];
        for (coef, v) in y.iter().zip(&basis) {
            axpy(*coef, v, &mut x);
        }
        normalize(&mut x);

        op.matvec_into(&x, &mut w);
        axpy(-theta, &x, &mut w);
        let residual = dot(&w, &w).sqrt();
        best_residual = best_residual.min(residual);
        if residual <= tol * theta.abs() {
            return Ok(LanczosOutcome { value: theta, vector: x });
        }
        start = x;
    }

    Err(Error::Solver { best_residual, iterations })
}
