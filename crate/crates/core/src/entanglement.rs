//! Reduced density matrices of a Dicke ground state and the finite-N
//! entanglement measures built from them.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::eigen::GroundState;
use crate::error::{Error, Result};

/// Eigenvalues of a reduced density matrix may dip below zero by roundoff;
/// anything below this is an integrity failure.
const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Eigenvalues at or below this are dropped from the entropy sum.
const ENTROPY_CUTOFF: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    Atoms,
    Field,
    SingleAtom,
}

/// Real symmetric density matrix of one subsystem with its spectrum cached
/// (descending, clipped to `[0, 1]`).
#[derive(Clone, Debug)]
pub struct ReducedDensityMatrix {
    pub subsystem: Subsystem,
    matrix: DMatrix<f64>,
    eigenvalues: Vec<f64>,
    clipped_weight: f64,
}

impl ReducedDensityMatrix {
    pub fn new(subsystem: Subsystem, matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NumericalIntegrity("density matrix is not square".into()));
        }
        let trace = matrix.trace();
        if (trace - 1.0).abs() > 1e-8 {
            return Err(Error::NumericalIntegrity(format!("trace {trace} deviates from 1")));
        }
        let asym = (&matrix - matrix.transpose()).abs().max();
        if asym > 1e-12 {
            return Err(Error::NumericalIntegrity(format!("density matrix asymmetric by {asym:e}")));
        }
        let mut eigenvalues: Vec<f64> = SymmetricEigen::new(matrix.clone()).eigenvalues.iter().copied().collect();
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        if let Some(&min) = eigenvalues.last() {
            if min < EIGENVALUE_FLOOR {
                return Err(Error::NumericalIntegrity(format!("negative eigenvalue {min:e}")));
            }
        }
        let mut clipped_weight = 0.0;
        for p in &mut eigenvalues {
            let clipped = p.clamp(0.0, 1.0);
            clipped_weight += (*p - clipped).abs();
            *p = clipped;
        }
        Ok(Self { subsystem, matrix, eigenvalues, clipped_weight })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Total weight removed when clipping the spectrum to `[0, 1]`.
    pub fn clipped_weight(&self) -> f64 {
        self.clipped_weight
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// `Tr ρ²`, computed from the matrix entries.
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|x| x * x).sum()
    }
}

/// Which side of the atom-field split survives the partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keep {
    Atoms,
    Field,
}

/// Traces the ground state over the complementary subsystem.
pub fn partial_trace(state: &GroundState, keep: Keep) -> Result<ReducedDensityMatrix> {
    let spin = state.basis().spin_dim();
    let fock = state.basis().fock_dim();
    // amplitudes as a fock × spin matrix (row-major storage matches n-major order)
    let psi = DMatrix::from_row_slice(fock, spin, &state.amplitudes);
    match keep {
        Keep::Atoms => ReducedDensityMatrix::new(Subsystem::Atoms, psi.transpose() * &psi),
        Keep::Field => ReducedDensityMatrix::new(Subsystem::Field, &psi * psi.transpose()),
    }
}

/// `−Σ p log2 p` over the RDM spectrum, in bits.
pub fn von_neumann_entropy(rdm: &ReducedDensityMatrix) -> Result<f64> {
    if rdm.clipped_weight > 1e-9 {
        return Err(Error::NumericalIntegrity(format!(
            "spectrum clipping removed weight {:e}",
            rdm.clipped_weight
        )));
    }
    Ok(rdm
        .eigenvalues
        .iter()
        .filter(|&&p| p > ENTROPY_CUTOFF)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
        + 0.0)
}

/// Normalisation `η = d/(d − 1)` that maps a maximally mixed `d`-level
/// state to unit linear entropy.
pub fn linear_entropy_normalisation(dim: usize) -> f64 {
    dim as f64 / (dim as f64 - 1.0)
}

/// `η_d (1 − Tr ρ²)` for a subsystem of effective dimension `dim`.
pub fn linear_entropy(rdm: &ReducedDensityMatrix, dim: usize) -> Result<f64> {
    if dim < 2 {
        return Err(Error::Domain(format!("linear entropy needs dimension ≥ 2, got {dim}")));
    }
    let purity = rdm.purity();
    if !(0.0..=1.0 + 1e-10).contains(&purity) {
        return Err(Error::NumericalIntegrity(format!("purity {purity} outside [0, 1]")));
    }
    Ok((linear_entropy_normalisation(dim) * (1.0 - purity)).max(0.0))
}

/// Collective spin expectations of a ground state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollectiveExpectations {
    pub jz: f64,
    /// `⟨J+⟩`; equal to `⟨J−⟩` because the amplitudes are real.
    pub j_plus: f64,
}

pub fn collective_expectations(state: &GroundState) -> CollectiveExpectations {
    let n_atoms = state.n_atoms();
    let j = n_atoms as f64 / 2.0;
    let mut jz = 0.0;
    let mut j_plus = 0.0;
    for n in 0..=state.n_max_used() {
        for k in 0..=n_atoms {
            let a = state.amplitude(n, k);
            jz += a * a * (k as f64 - j);
            if k < n_atoms {
                let raise = (((n_atoms - k) * (k + 1)) as f64).sqrt();
                j_plus += state.amplitude(n, k + 1) * raise * a;
            }
        }
    }
    CollectiveExpectations { jz, j_plus }
}

/// Reduced state of any one atom, ordered (lower, upper).
pub fn single_atom_rdm(state: &GroundState) -> Result<ReducedDensityMatrix> {
    let n = state.n_atoms() as f64;
    let ex = collective_expectations(state);
    let lower = 0.5 * (1.0 - 2.0 * ex.jz / n);
    let upper = 0.5 * (1.0 + 2.0 * ex.jz / n);
    let coherence = ex.j_plus / n;
    let m = DMatrix::from_row_slice(2, 2, &[lower, coherence, coherence, upper]);
    ReducedDensityMatrix::new(Subsystem::SingleAtom, m)
}

/// Parts of the average linear entropy over all `N + 1` subsystems.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AverageLinearEntropy {
    pub q: f64,
    /// `L_k = 2 (1 − Tr ρ_k²)`.
    pub single_atom: f64,
    /// `L_b = (1 + 1/N)(1 − Tr ρ_b²)`.
    pub field: f64,
}

/// `Q = N/(N+1) L_k + 1/(N+1) L_b`.
pub fn average_linear_entropy_q(state: &GroundState) -> Result<AverageLinearEntropy> {
    let n = state.n_atoms();
    let single_atom = linear_entropy(&single_atom_rdm(state)?, 2)?;
    let field = linear_entropy(&partial_trace(state, Keep::Field)?, n + 1)?;
    let nf = n as f64;
    let q = (nf * single_atom + field) / (nf + 1.0);
    Ok(AverageLinearEntropy { q, single_atom, field })
}
