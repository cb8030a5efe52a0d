//! Coordinate-space inverse participation ratio `P⁻¹ = ∫∫ Ψ⁴ dx dy`.
//!
//! The field Fock state `|n⟩` maps to the oscillator eigenfunction `φ_n(x; ω)`
//! and the Dicke state `|j, m⟩` to `φ_{m+j}(y; ω0)`, the Holstein-Primakoff
//! boson with occupation `m + j`. Both have unit mass.

use nalgebra::DMatrix;

use crate::eigen::GroundState;
use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Relative amplitude allowed on the grid boundary.
const BOUNDARY_TOLERANCE: f64 = 1e-6;

/// Uniform tensor-product grid on `[−x_max, x_max] × [−y_max, y_max]`,
/// integrated with the trapezoid rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureGrid {
    pub x_max: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

/// Highest index whose marginal weight exceeds `1e-14`.
fn highest_occupied(weights: impl Iterator<Item = f64>) -> usize {
    weights.enumerate().filter(|&(_, w)| w > 1e-14).map(|(i, _)| i).last().unwrap_or(0)
}

/// Half-width and point count for an axis whose highest occupied level is
/// `top` at frequency `freq`.
fn axis(top: usize, freq: f64) -> (f64, usize) {
    let length = 1.0 / freq.sqrt();
    let turning = ((2 * top + 1) as f64).sqrt();
    let half_width = (turning + 6.0) * length;
    // Ψ⁴ carries wavenumbers up to ~4× those of the highest level
    let k_max = (turning + 6.0) / length;
    let h = std::f64::consts::PI / (6.0 * k_max);
    let points = (2.0 * half_width / h).ceil() as usize + 1;
    (half_width, points.max(33))
}

impl QuadratureGrid {
    /// Grid sized from the occupied Fock and Dicke levels of `state`: each
    /// axis extends six oscillator lengths past the classical turning point
    /// of its highest occupied level.
    pub fn auto(state: &GroundState, params: &ModelParams) -> Self {
        let n_atoms = state.n_atoms();
        let top_n = highest_occupied(
            (0..=state.n_max_used()).map(|n| (0..=n_atoms).map(|k| state.amplitude(n, k).powi(2)).sum()),
        );
        let top_k = highest_occupied(
            (0..=n_atoms).map(|k| (0..=state.n_max_used()).map(|n| state.amplitude(n, k).powi(2)).sum()),
        );
        let (x_max, nx) = axis(top_n, params.omega());
        let (y_max, ny) = axis(top_k, params.omega0());
        Self { x_max, y_max, nx, ny }
    }

    /// Same extent with the spacing halved.
    pub fn refined(&self) -> Self {
        Self { nx: 2 * self.nx - 1, ny: 2 * self.ny - 1, ..*self }
    }

    pub fn x_nodes(&self) -> Vec<f64> {
        nodes(self.x_max, self.nx)
    }

    pub fn y_nodes(&self) -> Vec<f64> {
        nodes(self.y_max, self.ny)
    }
}

fn nodes(half_width: f64, count: usize) -> Vec<f64> {
    let h = 2.0 * half_width / (count - 1) as f64;
    (0..count).map(|i| -half_width + i as f64 * h).collect()
}

fn trapezoid_weights(count: usize, h: f64) -> Vec<f64> {
    (0..count).map(|i| if i == 0 || i + 1 == count { 0.5 * h } else { h }).collect()
}

/// Unit-mass oscillator eigenfunctions `φ_0 … φ_{levels−1}` at frequency
/// `freq`, evaluated at `points`; returns a `points × levels` matrix.
pub fn oscillator_functions(points: &[f64], freq: f64, levels: usize) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(points.len(), levels);
    let norm = (freq / std::f64::consts::PI).powf(0.25);
    for (i, &x) in points.iter().enumerate() {
        let xi = freq.sqrt() * x;
        let mut prev = 0.0;
        let mut cur = norm * (-0.5 * xi * xi).exp();
        for k in 0..levels {
            out[(i, k)] = cur;
            let kf = k as f64;
            let next = (2.0 / (kf + 1.0)).sqrt() * xi * cur - (kf / (kf + 1.0)).sqrt() * prev;
            prev = cur;
            cur = next;
        }
    }
    out
}

/// Ground-state wavefunction `Ψ(x_i, y_j)` sampled on the grid.
pub fn coordinate_wavefunction(state: &GroundState, params: &ModelParams, grid: &QuadratureGrid) -> DMatrix<f64> {
    let fock = state.basis().fock_dim();
    let spin = state.basis().spin_dim();
    let phi_x = oscillator_functions(&grid.x_nodes(), params.omega(), fock);
    let phi_y = oscillator_functions(&grid.y_nodes(), params.omega0(), spin);
    let coeffs = DMatrix::from_row_slice(fock, spin, &state.amplitudes);
    phi_x * coeffs * phi_y.transpose()
}

/// `∫∫ Ψ(x, y)⁴ dx dy` by the trapezoid rule on `grid`.
pub fn inverse_participation_ratio(state: &GroundState, params: &ModelParams, grid: &QuadratureGrid) -> Result<f64> {
    if grid.nx < 3 || grid.ny < 3 || !(grid.x_max > 0.0 && grid.y_max > 0.0) {
        return Err(Error::Domain("quadrature grid needs positive extent and ≥ 3 points per axis".into()));
    }
    let psi = coordinate_wavefunction(state, params, grid);
    let peak = psi.amax();
    let (nx, ny) = (grid.nx, grid.ny);
    let boundary = (0..nx)
        .flat_map(|i| [psi[(i, 0)], psi[(i, ny - 1)]])
        .chain((0..ny).flat_map(|j| [psi[(0, j)], psi[(nx - 1, j)]]))
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let ratio = boundary / peak;
    if ratio > BOUNDARY_TOLERANCE {
        return Err(Error::DomainCoverage { ratio });
    }

    let wx = trapezoid_weights(nx, 2.0 * grid.x_max / (nx - 1) as f64);
    let wy = trapezoid_weights(ny, 2.0 * grid.y_max / (ny - 1) as f64);
    let mut total = 0.0;
    for i in 0..nx {
        let row: f64 = (0..ny).map(|j| wy[j] * psi[(i, j)].powi(4)).sum();
        total += wx[i] * row;
    }
    Ok(total)
}
