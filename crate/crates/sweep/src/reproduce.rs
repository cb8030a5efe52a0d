//! Preset sweeps behind the `reproduce` subcommand: entropy/IPR curves,
//! effective temperature, average linear entropy and the scaling table.

use dicke_core::thermo::{dq_dlambda_td, effective_temperature, phase_solution, rdm_params};
use dicke_core::{Measure, SystemSize};

use crate::config::{Backend, LambdaScale, SweepConfig};
use crate::emit::{format_number, Fits};
use crate::error::Result;
use crate::fit::{fit_critical_exponents, fit_entropy_scaling};
use crate::sweep::{run_sweep, SweepOutcome};

/// `S`, `L` and `P⁻¹` over `λ/λc ∈ [0, 3]` for `N = 8, 32` and the
/// thermodynamic limit.
pub fn entropy_curves_config(omega: f64, omega0: f64) -> SweepConfig {
    SweepConfig {
        omega,
        omega0,
        lambda_min: 0.0,
        lambda_max: 3.0,
        lambda_steps: 61,
        n_atoms: vec![SystemSize::Finite(8), SystemSize::Finite(32), SystemSize::Infinite],
        measures: vec![Measure::SVn, Measure::LLin, Measure::IprInv],
        backend: Backend::Ed,
        ..SweepConfig::default()
    }
}

/// `lambda_rel,t_eff,kappa` on `steps` interior points of `(0, λc)`.
pub fn temperature_dataset(omega: f64, omega0: f64, steps: usize) -> Result<String> {
    let base = SweepConfig { omega, omega0, ..SweepConfig::default() };
    let mut out = String::from("lambda_rel,t_eff,kappa\n");
    for i in 1..=steps {
        let ratio = i as f64 / (steps + 1) as f64;
        let params = base.params(ratio, 1)?;
        let rdm = rdm_params(&phase_solution(&params));
        let t = effective_temperature(&rdm, params.omega())?;
        out.push_str(&format!(
            "{},{},{}\n",
            format_number(ratio),
            format_number(t.temperature),
            format_number(rdm.kappa)
        ));
    }
    Ok(out)
}

/// `Q` over `λ/λc ∈ [0, 3]` for `N = 8, 16` and the thermodynamic limit.
pub fn average_entropy_config(omega: f64, omega0: f64) -> SweepConfig {
    SweepConfig {
        omega,
        omega0,
        lambda_min: 0.0,
        lambda_max: 3.0,
        lambda_steps: 61,
        n_atoms: vec![SystemSize::Finite(8), SystemSize::Finite(16), SystemSize::Infinite],
        measures: vec![Measure::QAvg],
        backend: Backend::Ed,
        ..SweepConfig::default()
    }
}

/// `lambda_rel,n_atoms,q_avg,dq_dlambda`; the derivative is filled on
/// thermodynamic-limit rows only.
pub fn average_entropy_dataset(config: &SweepConfig, outcome: &SweepOutcome) -> Result<String> {
    let mut out = String::from("lambda_rel,n_atoms,q_avg,dq_dlambda\n");
    for r in &outcome.reports {
        let derivative = match r.n_atoms {
            SystemSize::Infinite => format_number(dq_dlambda_td(&config.params(r.lambda_rel, 1)?)),
            SystemSize::Finite(_) => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_number(r.lambda_rel),
            r.n_atoms,
            r.q_avg.map(format_number).unwrap_or_default(),
            derivative
        ));
    }
    Ok(out)
}

/// Thermodynamic-limit rows on a log window below `λc`, for the critical
/// exponents.
pub fn critical_window_config(omega: f64, omega0: f64) -> SweepConfig {
    SweepConfig {
        omega,
        omega0,
        lambda_min: 1e-6,
        lambda_max: 1e-3,
        lambda_steps: 31,
        lambda_scale: LambdaScale::LogBelow,
        n_atoms: vec![SystemSize::Infinite],
        measures: vec![Measure::SVn],
        backend: Backend::Td,
        ..SweepConfig::default()
    }
}

/// ED entropy around the finite-size peaks for `N = 8, 16, 32, 64`.
pub fn entropy_peak_config(omega: f64, omega0: f64) -> SweepConfig {
    SweepConfig {
        omega,
        omega0,
        lambda_min: 0.9,
        lambda_max: 1.5,
        lambda_steps: 61,
        n_atoms: [8, 16, 32, 64].into_iter().map(SystemSize::Finite).collect(),
        measures: vec![Measure::SVn],
        backend: Backend::Ed,
        ..SweepConfig::default()
    }
}

/// Both scaling fits with the sweeps they were computed from.
pub fn scaling_table(omega: f64, omega0: f64) -> Result<(Fits, SweepOutcome, SweepOutcome)> {
    let window = critical_window_config(omega, omega0);
    let critical_rows = run_sweep(&window)?;
    let critical = fit_critical_exponents(&window.params(0.0, 1)?, &critical_rows.reports)?;
    let peaks = run_sweep(&entropy_peak_config(omega, omega0))?;
    let scaling = fit_entropy_scaling(&peaks.reports)?;
    Ok((Fits { entropy_scaling: Some(scaling), critical: Some(critical) }, critical_rows, peaks))
}
