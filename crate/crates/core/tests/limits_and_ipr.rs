use dicke_core::entanglement::*;
use dicke_core::ipr::*;
use dicke_core::perturbative::*;
use dicke_core::report::{measure_ground_state, measure_perturbative, measure_thermodynamic};
use dicke_core::thermo::{entropy_td, ipr_td, LobeConvention};
use dicke_core::*;
use nalgebra::{DMatrix, SymmetricEigen};

fn solve(ratio: f64, n_atoms: usize) -> (ModelParams, GroundState) {
    let p = make_params(1.0, 1.0, 0.0, n_atoms).unwrap().at_relative_coupling(ratio).unwrap();
    let gs = converge_cutoff(&p, 16, 1.5, 1e-9).unwrap();
    (p, gs)
}

fn entropy(gs: &GroundState) -> f64 {
    von_neumann_entropy(&partial_trace(gs, Keep::Atoms).unwrap()).unwrap()
}

fn ipr(p: &ModelParams, gs: &GroundState) -> f64 {
    inverse_participation_ratio(gs, p, &QuadratureGrid::auto(gs, p)).unwrap()
}

#[test]
fn decoupled_ipr_is_gaussian_product() {
    let (p, gs) = solve(0.0, 8);
    assert!((ipr(&p, &gs) - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-12);
}

#[test]
fn ipr_is_stable_under_grid_refinement() {
    let (p, gs) = solve(0.5, 8);
    let grid = QuadratureGrid::auto(&gs, &p);
    let coarse = inverse_participation_ratio(&gs, &p, &grid).unwrap();
    let fine = inverse_participation_ratio(&gs, &p, &grid.refined()).unwrap();
    assert!((coarse - fine).abs() < 1e-6);
}

#[test]
fn truncated_grid_is_a_coverage_error() {
    let (p, gs) = solve(0.5, 8);
    let grid = QuadratureGrid { x_max: 1.5, y_max: 1.5, nx: 61, ny: 61 };
    assert!(matches!(inverse_participation_ratio(&gs, &p, &grid), Err(Error::DomainCoverage { .. })));
}

#[test]
fn normal_phase_ipr_converges_to_closed_form() {
    let td = ipr_td(&make_params(1.0, 1.0, 0.25, 8).unwrap());
    let mut last = f64::INFINITY;
    for n in [8, 16, 32] {
        let (p, gs) = solve(0.5, n);
        let dev = (ipr(&p, &gs) - td).abs();
        assert!(dev < last, "N={n}");
        last = dev;
    }
    assert!(last / td < 0.1);
}

#[test]
fn superradiant_ipr_carries_the_lobe_jacobian() {
    let (p, gs) = solve(2.0, 32);
    let td = ipr_td(&p);
    assert!(((ipr(&p, &gs) - td) / td).abs() < 0.01);
}

#[test]
fn weak_coupling_entropy_value() {
    let p = make_params(1.0, 1.0, 0.2, 8).unwrap();
    let r = perturbative_entropy(&p);
    assert!((r.sigma - 0.1).abs() < 1e-15);
    let oracle = {
        let q: f64 = 1.0 / 1.01;
        -q * q.log2() - (1.0 - q) * (1.0f64 - q).log2()
    };
    assert!((r.s_pert - oracle).abs() < 1e-15);
    assert!((r.s_pert - 0.0801).abs() < 1e-4);
    assert_eq!(r.validity_hint, WEAK_COUPLING_VALIDITY);
}

#[test]
fn weak_coupling_entropy_tracks_ed() {
    for n in [8, 16, 32] {
        for ratio in [0.1, 0.2, 0.3, 0.4] {
            let (p, gs) = solve(ratio, n);
            let diff = (entropy(&gs) - perturbative_entropy(&p).s_pert).abs();
            assert!(diff <= 0.01, "N={n} λ/λc={ratio}: {diff}");
        }
    }
}

#[test]
fn strong_coupling_state_overlaps_ed() {
    let (p, gs) = solve(4.0, 8);
    let needed = strong_coupling_cutoff(&p);
    let basis = build_basis(&p, gs.n_max_used().max(needed)).unwrap();
    let ed = if basis.n_max() == gs.n_max_used() {
        gs
    } else {
        ground_state(&assemble_hamiltonian(&p, &basis), &basis, 1e-10).unwrap()
    };
    let limit = strong_coupling_state(&p, &basis);
    let overlap: f64 = limit.iter().zip(&ed.amplitudes).map(|(a, b)| a * b).sum();
    assert!(overlap * overlap > 0.98, "{}", overlap * overlap);
    assert!((entropy(&ed) - strong_coupling_entropy_limit()).abs() < 0.1);
}

#[test]
fn limiting_state_has_two_equal_schmidt_weights() {
    let p = make_params(1.0, 1.0, 0.0, 6).unwrap().at_relative_coupling(6.0).unwrap();
    let basis = build_basis(&p, strong_coupling_cutoff(&p)).unwrap();
    let state = strong_coupling_state(&p, &basis);
    let psi = DMatrix::from_row_slice(basis.fock_dim(), basis.spin_dim(), &state);
    let mut ev: Vec<f64> = SymmetricEigen::new(psi.transpose() * &psi).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    assert!((ev[0] - 0.5).abs() < 1e-6 && (ev[1] - 0.5).abs() < 1e-6);
    assert!(ev[2..].iter().all(|x| x.abs() < 1e-10));
}

#[test]
fn finite_size_entropy_approaches_closed_form() {
    for ratio in [0.5, 0.8] {
        let td = entropy_td(&make_params(1.0, 1.0, 0.5 * ratio, 8).unwrap(), LobeConvention::TwoLobe);
        let mut last = f64::INFINITY;
        for n in [8, 16, 32] {
            let (_, gs) = solve(ratio, n);
            let dev = (entropy(&gs) - td).abs();
            assert!(dev < last);
            last = dev;
        }
    }
}

#[test]
fn reports_for_each_backend() {
    let (p, gs) = solve(0.0, 2);
    let r = measure_ground_state(&p, &gs, &Measure::ALL).unwrap();
    assert_eq!((r.s_vn, r.l_lin, r.q_avg), (Some(0.0), Some(0.0), Some(0.0)));
    assert_eq!(r.jz_mean, Some(-1.0));
    assert_eq!((r.t_eff, r.kappa), (None, None));
    assert!(r.converged);

    let td = measure_thermodynamic(&p, &Measure::ALL, LobeConvention::TwoLobe);
    assert_eq!(td.n_atoms, SystemSize::Infinite);
    assert_eq!((td.s_vn, td.l_lin, td.q_avg), (Some(0.0), Some(0.0), Some(0.0)));
    assert_eq!(td.t_eff, Some(0.0));

    let pert = measure_perturbative(&p);
    assert_eq!(pert.s_vn, Some(0.0));
    assert_eq!(pert.n_max, None);
}
