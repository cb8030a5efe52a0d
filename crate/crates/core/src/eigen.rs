//! Ground eigenpair of the Dicke Hamiltonian and boson-cutoff convergence.

use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::lanczos;
use crate::model::{assemble_hamiltonian, BasisIndex, ModelParams, DEFAULT_MAX_DIMENSION};
use crate::sparse::SparseHermitian;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    Dense,
    Lanczos,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Relative residual bound `‖Hv − Ev‖ ≤ tol·|E|`.
    pub tol: f64,
    /// Solve only the positive-parity block.
    pub parity_projection: bool,
    /// Sector dimensions up to this size use a dense eigensolve.
    pub dense_threshold: usize,
    pub krylov_dim: usize,
    pub max_restarts: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            parity_projection: true,
            dense_threshold: 400,
            krylov_dim: 160,
            max_restarts: 60,
        }
    }
}

/// Ground eigenpair over a [`BasisIndex`].
#[derive(Clone, Debug)]
pub struct GroundState {
    pub energy: f64,
    /// Unit-norm amplitudes over the full basis (zero outside the sector).
    pub amplitudes: Vec<f64>,
    pub parity: i8,
    pub residual: f64,
    pub converged: bool,
    /// `E(other sector) − E(ground sector)` when both sectors were solved.
    pub doublet_gap: Option<f64>,
    pub method: SolveMethod,
    basis: BasisIndex,
}

impl GroundState {
    pub fn basis(&self) -> &BasisIndex {
        &self.basis
    }

    pub fn n_max_used(&self) -> usize {
        self.basis.n_max()
    }

    pub fn n_atoms(&self) -> usize {
        self.basis.n_atoms()
    }

    /// Amplitude of `|n⟩ ⊗ |j, k − j⟩`.
    pub fn amplitude(&self, n: usize, k: usize) -> f64 {
        self.amplitudes[n * (self.basis.n_atoms() + 1) + k]
    }

    /// Weight in the highest retained Fock level.
    pub fn top_fock_weight(&self) -> f64 {
        let n = self.basis.n_max();
        (0..=self.basis.n_atoms()).map(|k| self.amplitude(n, k).powi(2)).sum()
    }

    /// `⟨Π⟩`.
    pub fn parity_expectation(&self) -> f64 {
        self.amplitudes
            .iter()
            .zip(self.basis.parities())
            .map(|(a, &p)| a * a * p as f64)
            .sum()
    }
}

struct SectorSolution {
    energy: f64,
    vector: Vec<f64>,
    method: SolveMethod,
}

fn solve_sector(block: &SparseHermitian, opts: &SolverOptions) -> Result<SectorSolution> {
    if block.dim() <= opts.dense_threshold {
        let eig = SymmetricEigen::new(block.to_dense());
        let (idx, &energy) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .ok_or_else(|| Error::Domain("empty parity sector".into()))?;
        Ok(SectorSolution {
            energy,
            vector: eig.eigenvectors.column(idx).iter().copied().collect(),
            method: SolveMethod::Dense,
        })
    } else {
        let out = lanczos::lowest_eigenpair(block, opts.tol, opts.krylov_dim, opts.max_restarts)?;
        Ok(SectorSolution { energy: out.value, vector: out.vector, method: SolveMethod::Lanczos })
    }
}

/// Flips the global sign so the largest-magnitude amplitude is positive
/// (first index wins ties).
fn fix_sign(v: &mut [f64]) {
    let mut best = 0.0f64;
    let mut sign = 1.0;
    for &x in v.iter() {
        if x.abs() > best {
            best = x.abs();
            sign = x.signum();
        }
    }
    if sign < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Ground state with default options at residual tolerance `tol`.
pub fn ground_state(hamiltonian: &SparseHermitian, basis: &BasisIndex, tol: f64) -> Result<GroundState> {
    ground_state_with(hamiltonian, basis, &SolverOptions { tol, ..SolverOptions::default() })
}

/// Lowest eigenpair of `hamiltonian`.
///
/// With parity projection only the `Π = +1` block is diagonalized. Without
/// it both blocks are solved and the lower one is returned together with the
/// gap to the other sector's ground energy.
pub fn ground_state_with(
    hamiltonian: &SparseHermitian,
    basis: &BasisIndex,
    opts: &SolverOptions,
) -> Result<GroundState> {
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!("solver tolerance must be positive, got {}", opts.tol)));
    }
    if hamiltonian.dim() != basis.dim() {
        return Err(Error::Domain("Hamiltonian and basis dimensions differ".into()));
    }

    let plus = basis.sector(1);
    let minus = basis.sector(-1);
    let plus_sol = solve_sector(&hamiltonian.restrict(&plus), opts)?;

    let (parity, sector, sol, doublet_gap) = if opts.parity_projection || minus.is_empty() {
        (1, plus, plus_sol, None)
    } else {
        let minus_sol = solve_sector(&hamiltonian.restrict(&minus), opts)?;
        let gap = (minus_sol.energy - plus_sol.energy).abs();
        if minus_sol.energy < plus_sol.energy {
            (-1, minus, minus_sol, Some(gap))
        } else {
            (1, plus, plus_sol, Some(gap))
        }
    };

    let mut amplitudes = vec![0.0; basis.dim()];
    for (&i, &x) in sector.iter().zip(&sol.vector) {
        amplitudes[i] = x;
    }
    let norm = amplitudes.iter().map(|x| x * x).sum::<f64>().sqrt();
    amplitudes.iter_mut().for_each(|x| *x /= norm);
    fix_sign(&mut amplitudes);

    let mut hv = vec![0.0; basis.dim()];
    hamiltonian.matvec_into(&amplitudes, &mut hv);
    let residual = hv
        .iter()
        .zip(&amplitudes)
        .map(|(h, a)| (h - sol.energy * a).powi(2))
        .sum::<f64>()
        .sqrt();
    let bound = opts.tol * sol.energy.abs();
    if residual > bound {
        return Err(Error::Solver { best_residual: residual, iterations: 0 });
    }

    Ok(GroundState {
        energy: sol.energy,
        amplitudes,
        parity,
        residual,
        converged: true,
        doublet_gap,
        method: sol.method,
        basis: basis.clone(),
    })
}

/// Boson-cutoff search parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffPolicy {
    pub n_max_start: usize,
    pub growth: f64,
    /// Absolute bound on successive ground-energy differences.
    pub energy_tol: f64,
    /// Bound on the weight in the top Fock level.
    pub tail_tol: f64,
    pub max_n_max: usize,
    pub max_dimension: usize,
    pub solver: SolverOptions,
}

impl Default for CutoffPolicy {
    fn default() -> Self {
        Self {
            n_max_start: 16,
            growth: 1.5,
            energy_tol: 1e-9,
            tail_tol: 1e-8,
            max_n_max: 400,
            max_dimension: DEFAULT_MAX_DIMENSION,
            solver: SolverOptions::default(),
        }
    }
}

impl CutoffPolicy {
    fn next(&self, n_max: usize) -> usize {
        ((n_max as f64 * self.growth).ceil() as usize).max(n_max + 1)
    }
}

/// Ground state with default policy apart from the three loop parameters.
pub fn converge_cutoff(
    params: &ModelParams,
    n_max_start: usize,
    growth: f64,
    energy_tol: f64,
) -> Result<GroundState> {
    converge_cutoff_with(
        params,
        &CutoffPolicy { n_max_start, growth, energy_tol, ..CutoffPolicy::default() },
    )
}

/// Grows `n_max` geometrically until two successive cutoffs agree in energy
/// and the top Fock level is empty. The returned state is the smaller of the
/// two agreeing cutoffs; the larger one certifies it.
pub fn converge_cutoff_with(params: &ModelParams, policy: &CutoffPolicy) -> Result<GroundState> {
    if !(policy.growth > 1.0) {
        return Err(Error::Domain(format!("cutoff growth must exceed 1, got {}", policy.growth)));
    }
    let solve = |n_max: usize| -> Result<GroundState> {
        let basis = BasisIndex::with_capacity(params.n_atoms(), n_max, policy.max_dimension)?;
        let h = assemble_hamiltonian(params, &basis);
        ground_state_with(&h, &basis, &policy.solver)
    };

    let mut energies = Vec::new();
    let mut n_max = policy.n_max_start;
    let mut previous = solve(n_max)?;
    energies.push(previous.energy);
    loop {
        let next_n = policy.next(n_max);
        if next_n > policy.max_n_max {
            return Err(Error::CutoffConvergence { n_max, energies });
        }
        let current = match solve(next_n) {
            Ok(s) => s,
            Err(Error::Capacity { .. }) => return Err(Error::CutoffConvergence { n_max, energies }),
            Err(e) => return Err(e),
        };
        energies.push(current.energy);
        if (previous.energy - current.energy).abs() < policy.energy_tol
            && previous.top_fock_weight() < policy.tail_tol
        {
            return Ok(previous);
        }
        previous = current;
        n_max = next_n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_basis, make_params};

    #[test]
    fn decoupled_ground_state() {
        let p = make_params(1.0, 1.0, 0.0, 8).unwrap();
        let b = build_basis(&p, 6).unwrap();
        let h = assemble_hamiltonian(&p, &b);
        let gs = ground_state(&h, &b, 1e-10).unwrap();
        assert_eq!(gs.energy, -4.0);
        assert_eq!(gs.amplitude(0, 0), 1.0);
        assert_eq!(gs.parity, 1);
    }

    #[test]
    fn lanczos_and_dense_paths_agree() {
        let p = make_params(1.0, 1.0, 0.45, 6).unwrap();
        let b = build_basis(&p, 30).unwrap();
        let h = assemble_hamiltonian(&p, &b);
        let dense = ground_state(&h, &b, 1e-10).unwrap();
        let iterative = ground_state_with(
            &h,
            &b,
            &SolverOptions { dense_threshold: 0, ..SolverOptions::default() },
        )
        .unwrap();
        assert_eq!(dense.method, SolveMethod::Dense);
        assert_eq!(iterative.method, SolveMethod::Lanczos);
        assert!((dense.energy - iterative.energy).abs() < 1e-10);
        let overlap: f64 = dense.amplitudes.iter().zip(&iterative.amplitudes).map(|(a, b)| a * b).sum();
        assert!((overlap - 1.0).abs() < 1e-9, "overlap {overlap}");
    }

    #[test]
    fn sign_convention_makes_largest_amplitude_positive() {
        let mut v = vec![0.1, -0.9, 0.3];
        fix_sign(&mut v);
        assert_eq!(v, vec![-0.1, 0.9, -0.3]);
    }

    #[test]
    fn nonpositive_tolerance_is_rejected() {
        let p = make_params(1.0, 1.0, 0.1, 2).unwrap();
        let b = build_basis(&p, 3).unwrap();
        let h = assemble_hamiltonian(&p, &b);
        assert!(matches!(ground_state(&h, &b, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_coupling_converges_at_start() {
        let p = make_params(1.0, 1.0, 0.0, 4).unwrap();
        let gs = converge_cutoff(&p, 5, 2.0, 1e-9).unwrap();
        assert_eq!(gs.n_max_used(), 5);
    }

    #[test]
    fn cutoff_capacity_is_reported_with_energies() {
        let p = make_params(1.0, 1.0, 2.0, 8).unwrap();
        let policy = CutoffPolicy { n_max_start: 4, growth: 2.0, max_n_max: 16, ..CutoffPolicy::default() };
        match converge_cutoff_with(&p, &policy) {
            Err(Error::CutoffConvergence { energies, .. }) => assert_eq!(energies.len(), 3),
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn growth_must_exceed_one() {
        let p = make_params(1.0, 1.0, 0.1, 2).unwrap();
        assert!(converge_cutoff(&p, 4, 1.0, 1e-9).is_err());
    }
}
