//! Parallel evaluation of the (λ, N, backend) grid.

use rayon::prelude::*;
use serde::Serialize;

use dicke_core::report::{measure_ground_state, measure_perturbative, measure_thermodynamic};
use dicke_core::thermo::LobeConvention;
use dicke_core::{converge_cutoff_with, MeasureReport, SystemSize};

use crate::config::{Backend, SweepConfig};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub lambda_rel: f64,
    pub size: SystemSize,
    /// `Ed`, `Td` or `Perturbative`.
    pub backend: Backend,
}

impl SweepPoint {
    fn sort_key(&self) -> (SystemSize, Backend) {
        (self.size, self.backend)
    }
}

/// A point that produced no report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointError {
    pub lambda_rel: f64,
    pub n_atoms: SystemSize,
    pub backend: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepOutcome {
    pub reports: Vec<MeasureReport>,
    pub errors: Vec<PointError>,
}

impl SweepOutcome {
    pub fn is_complete(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Every point of the sweep in output order. Finite sizes run the ED and/or
/// perturbative backends; the thermodynamic limit runs when `inf` is listed
/// or the TD backend is selected, and never at `λ = λc`.
pub fn sweep_points(config: &SweepConfig) -> Vec<SweepPoint> {
    let grid = config.lambda_grid();
    let mut sizes = config.n_atoms.clone();
    if config.backend.includes(Backend::Td) {
        sizes.push(SystemSize::Infinite);
    }
    sizes.sort();
    sizes.dedup();

    let mut points = Vec::new();
    for size in sizes {
        let backends: Vec<Backend> = match size {
            SystemSize::Infinite => vec![Backend::Td],
            SystemSize::Finite(_) => [Backend::Ed, Backend::Perturbative]
                .into_iter()
                .filter(|b| config.backend.includes(*b))
                .collect(),
        };
        for backend in backends {
            for &lambda_rel in &grid {
                if backend == Backend::Td && lambda_rel == 1.0 {
                    continue;
                }
                points.push(SweepPoint { lambda_rel, size, backend });
            }
        }
    }
    points.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then(a.lambda_rel.total_cmp(&b.lambda_rel)));
    points
}

pub fn run_point(config: &SweepConfig, point: &SweepPoint) -> Result<MeasureReport> {
    let n = match point.size {
        SystemSize::Finite(n) => n,
        SystemSize::Infinite => 1,
    };
    let params = config.params(point.lambda_rel, n)?;
    let report = match point.backend {
        Backend::Td => measure_thermodynamic(&params, &config.measures, LobeConvention::TwoLobe),
        Backend::Perturbative => measure_perturbative(&params),
        _ => {
            let state = converge_cutoff_with(&params, &config.cutoff_policy())?;
            measure_ground_state(&params, &state, &config.measures)?
        }
    };
    Ok(report)
}

/// Runs all points in parallel. Per-point failures are collected, not
/// propagated; output order does not depend on scheduling.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let points = sweep_points(config);
    let results: Vec<(SweepPoint, Result<MeasureReport>)> =
        points.par_iter().map(|p| (*p, run_point(config, p))).collect();

    let mut outcome = SweepOutcome::default();
    for (point, result) in results {
        match result {
            Ok(report) => outcome.reports.push(report),
            Err(e) => outcome.errors.push(PointError {
                lambda_rel: point.lambda_rel,
                n_atoms: point.size,
                backend: point.backend.to_string(),
                message: e.to_string(),
            }),
        }
    }
    Ok(outcome)
}
