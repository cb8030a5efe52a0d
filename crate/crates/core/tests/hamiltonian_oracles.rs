use dicke_core::eigen::SolveMethod;
use dicke_core::*;
use nalgebra::{DMatrix, SymmetricEigen};

/// Dense `H = ω0 Jz + ω a†a + λ/√(2j)(a† + a)(J+ + J−)` from Kronecker
/// products of single-mode operators.
fn kronecker_hamiltonian(omega: f64, omega0: f64, lambda: f64, n_atoms: usize, n_max: usize) -> DMatrix<f64> {
    let fock = n_max + 1;
    let spin = n_atoms + 1;
    let j = n_atoms as f64 / 2.0;

    let mut a = DMatrix::zeros(fock, fock);
    for n in 1..fock {
        a[(n - 1, n)] = (n as f64).sqrt();
    }
    let number = a.transpose() * &a;
    let field = &a + a.transpose();

    let mut jz = DMatrix::zeros(spin, spin);
    let mut jp = DMatrix::zeros(spin, spin);
    for k in 0..spin {
        let m = k as f64 - j;
        jz[(k, k)] = m;
        if k + 1 < spin {
            jp[(k + 1, k)] = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        }
    }
    let jx2 = &jp + jp.transpose();

    let id_f = DMatrix::<f64>::identity(fock, fock);
    let id_s = DMatrix::<f64>::identity(spin, spin);
    id_f.kronecker(&jz) * omega0
        + number.kronecker(&id_s) * omega
        + field.kronecker(&jx2) * (lambda / (2.0 * j).sqrt())
}

#[test]
fn matrix_equals_kronecker_construction() {
    let p = make_params(1.0, 1.0, 0.5, 2).unwrap();
    let b = build_basis(&p, 2).unwrap();
    let h = assemble_hamiltonian(&p, &b).to_dense();
    let oracle = kronecker_hamiltonian(1.0, 1.0, 0.5, 2, 2);
    assert!((h - oracle).amax() < 1e-14);

    let p = make_params(0.7, 1.9, 0.35, 5).unwrap();
    let b = build_basis(&p, 4).unwrap();
    let h = assemble_hamiltonian(&p, &b).to_dense();
    assert!((h - kronecker_hamiltonian(0.7, 1.9, 0.35, 5, 4)).amax() < 1e-13);
}

#[test]
fn parity_commutes_exactly() {
    let p = make_params(1.0, 1.0, 0.7, 4).unwrap();
    let b = build_basis(&p, 10).unwrap();
    let h = assemble_hamiltonian(&p, &b);
    let pi = parity_operator(&b);
    let commutator = pi.mul_dense(&h) - h.mul_dense(&pi);
    assert_eq!(commutator.amax(), 0.0);
    let square = pi.mul_dense(&pi);
    assert_eq!(square, DMatrix::identity(b.dim(), b.dim()));
}

#[test]
fn blocks_partition_the_basis() {
    let p = make_params(1.0, 1.0, 0.4, 6).unwrap();
    let b = build_basis(&p, 9).unwrap();
    assert_eq!(b.sector(1).len() + b.sector(-1).len(), 10 * 7);
    let h = assemble_hamiltonian(&p, &b);
    for (r, c, _) in h.triplets() {
        assert_eq!(b.parities()[r], b.parities()[c]);
    }
}

#[test]
fn ground_energy_matches_full_diagonalization() {
    let p = make_params(1.0, 1.0, 0.3, 2).unwrap();
    let b = build_basis(&p, 6).unwrap();
    let h = assemble_hamiltonian(&p, &b);
    let gs = ground_state(&h, &b, 1e-10).unwrap();
    let full = SymmetricEigen::new(h.to_dense()).eigenvalues.min();
    assert!((gs.energy - full).abs() < 1e-10);
}

#[test]
fn lanczos_path_matches_full_diagonalization() {
    let p = make_params(1.0, 1.0, 0.45, 6).unwrap();
    let b = build_basis(&p, 30).unwrap();
    let h = assemble_hamiltonian(&p, &b);
    let opts = SolverOptions { dense_threshold: 0, ..SolverOptions::default() };
    let gs = ground_state_with(&h, &b, &opts).unwrap();
    assert_eq!(gs.method, SolveMethod::Lanczos);
    let full = SymmetricEigen::new(h.to_dense()).eigenvalues.min();
    assert!((gs.energy - full).abs() < 1e-10 * full.abs());
    assert!(gs.residual <= 1e-10 * gs.energy.abs());
}

#[test]
fn unprojected_ground_state_has_positive_parity() {
    let p = make_params(1.0, 1.0, 0.0, 8).unwrap().at_relative_coupling(0.9).unwrap();
    let b = build_basis(&p, 40).unwrap();
    let h = assemble_hamiltonian(&p, &b);
    let opts = SolverOptions { parity_projection: false, ..SolverOptions::default() };
    let gs = ground_state_with(&h, &b, &opts).unwrap();
    assert_eq!(gs.parity, 1);
    assert!((gs.parity_expectation() - 1.0).abs() < 1e-12);
    assert!(gs.doublet_gap.unwrap() > 0.0);
}

#[test]
fn deep_superradiant_doublet_is_reported() {
    let p = make_params(1.0, 1.0, 0.0, 8).unwrap().at_relative_coupling(2.0).unwrap();
    let b = build_basis(&p, 60).unwrap();
    let h = assemble_hamiltonian(&p, &b);
    let opts = SolverOptions { parity_projection: false, ..SolverOptions::default() };
    let gs = ground_state_with(&h, &b, &opts).unwrap();
    let gap = gs.doublet_gap.unwrap();
    assert!(gap >= 0.0 && gap < 1e-2, "{gap}");
}

#[test]
fn cutoff_is_stable_under_doubling_at_criticality() {
    let p = make_params(1.0, 1.0, 0.5, 8).unwrap();
    let gs = converge_cutoff(&p, 16, 1.5, 1e-9).unwrap();
    assert!(gs.converged);
    let b = build_basis(&p, 2 * gs.n_max_used()).unwrap();
    let doubled = ground_state(&assemble_hamiltonian(&p, &b), &b, 1e-10).unwrap();
    assert!((gs.energy - doubled.energy).abs() < 1e-8);
}

#[test]
fn stronger_coupling_needs_larger_cutoff() {
    let base = make_params(1.0, 1.0, 0.0, 8).unwrap();
    let used: Vec<usize> = [0.5, 1.0, 2.0, 3.0]
        .iter()
        .map(|&r| converge_cutoff(&base.at_relative_coupling(r).unwrap(), 16, 1.5, 1e-9).unwrap().n_max_used())
        .collect();
    assert!(used.windows(2).all(|w| w[0] <= w[1]), "{used:?}");
    assert!(used[3] > used[0]);
}

#[test]
fn energy_is_variational_in_the_cutoff() {
    let p = make_params(1.0, 1.0, 0.6, 6).unwrap();
    let mut last = f64::INFINITY;
    for n_max in [4, 8, 12, 16, 24, 32] {
        let b = build_basis(&p, n_max).unwrap();
        let e = ground_state(&assemble_hamiltonian(&p, &b), &b, 1e-10).unwrap().energy;
        assert!(e <= last + 1e-12);
        last = e;
    }
}

#[test]
fn energy_per_atom_approaches_normal_phase_value() {
    let base = make_params(1.0, 1.0, 0.0, 8).unwrap();
    let mut deviations = Vec::new();
    for n in [8, 16, 32] {
        let p = base.with_n_atoms(n).unwrap().at_relative_coupling(0.5).unwrap();
        let gs = converge_cutoff(&p, 16, 1.5, 1e-9).unwrap();
        deviations.push((gs.energy / n as f64 + 0.5).abs());
    }
    assert!(deviations.windows(2).all(|w| w[1] < w[0]), "{deviations:?}");
}

#[test]
fn dump_is_sorted_with_seventeen_digits() {
    let p = make_params(1.0, 1.0, 0.3, 1).unwrap();
    let b = build_basis(&p, 1).unwrap();
    let mut out = Vec::new();
    assemble_hamiltonian(&p, &b).write_dump(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let rows: Vec<(usize, usize, f64)> = text
        .lines()
        .map(|l| {
            let f: Vec<&str> = l.split(' ').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert!(rows.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
    // (0, +½) ↔ (1, −½): indices 1 and 2
    assert!(rows.contains(&(1, 2, 0.3)) && rows.contains(&(2, 1, 0.3)));
}
