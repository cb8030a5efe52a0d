//! Least-squares scaling fits: finite-size growth of the entropy peak and
//! the critical exponents of the thermodynamic limit.

use std::collections::BTreeMap;

use serde::Serialize;

use dicke_core::thermo::{phase_solution, soft_mode_length};
use dicke_core::{MeasureReport, ModelParams, SystemSize};

use crate::error::{Result, SweepError};

/// Closest relative distance to `λc` a critical fit accepts.
pub const MIN_CRITICAL_DISTANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope; `NaN` for two points.
    pub slope_error: f64,
    /// Root-mean-square residual.
    pub residual: f64,
}

/// Ordinary least squares `y = slope·x + intercept`.
pub fn linear_fit(points: &[(f64, f64)]) -> Result<LinearFit> {
    if points.len() < 2 {
        return Err(SweepError::FitDomain(format!("need at least 2 points, got {}", points.len())));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(SweepError::FitDomain("abscissae are all equal".into()));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = points.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum();
    let slope_error = if points.len() > 2 { (sse / (n - 2.0) / sxx).sqrt() } else { f64::NAN };
    Ok(LinearFit { slope, intercept, slope_error, residual: (sse / n).sqrt() })
}

/// Vertex of the parabola through three points; the middle point itself when
/// the parabola is not concave.
pub fn parabolic_peak(x: [f64; 3], y: [f64; 3]) -> (f64, f64) {
    let (d01, d12) = (x[1] - x[0], x[2] - x[1]);
    let s01 = (y[1] - y[0]) / d01;
    let s12 = (y[2] - y[1]) / d12;
    let curvature = (s12 - s01) / (x[2] - x[0]);
    if !(curvature < 0.0) {
        return (x[1], y[1]);
    }
    // p(t) = y1 + b (t − x1) + c (t − x1)² with b the slope at x1
    let b = s01 + curvature * d01;
    let shift = -b / (2.0 * curvature);
    (x[1] + shift, y[1] + b * shift + curvature * shift * shift)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeakPoint {
    pub n_atoms: usize,
    pub lambda_rel: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub quantity: String,
    pub exponent: f64,
    pub std_error: f64,
    /// Abscissa range of the fit, in the quantity's natural units
    /// (atom numbers, or relative distances to `λc`).
    pub window: [f64; 2],
    pub residual: f64,
    pub maxima: Vec<PeakPoint>,
}

/// Per-size maxima of `S_vn(λ)` over converged ED rows, refined by a
/// three-point parabola, fitted as `S_max = x·log2 N + c`.
pub fn fit_entropy_scaling(reports: &[MeasureReport]) -> Result<ScalingFit> {
    let mut curves: BTreeMap<usize, Vec<(f64, f64)>> = BTreeMap::new();
    for r in reports {
        if let (SystemSize::Finite(n), Some(s), Some(_)) = (r.n_atoms, r.s_vn, r.n_max) {
            if r.converged && s.is_finite() {
                curves.entry(n).or_default().push((r.lambda_rel, s));
            }
        }
    }
    if curves.len() < 4 {
        return Err(SweepError::FitDomain(format!("need at least 4 system sizes, got {}", curves.len())));
    }

    let mut maxima = Vec::with_capacity(curves.len());
    for (&n, curve) in curves.iter_mut() {
        curve.sort_by(|a, b| a.0.total_cmp(&b.0));
        let top = curve
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
            .map(|(i, _)| i)
            .expect("non-empty curve");
        if top == 0 || top + 1 == curve.len() {
            return Err(SweepError::FitDomain(format!(
                "entropy maximum for N={n} lies on the grid boundary (λ/λc = {})",
                curve[top].0
            )));
        }
        let (x, y) = (
            [curve[top - 1].0, curve[top].0, curve[top + 1].0],
            [curve[top - 1].1, curve[top].1, curve[top + 1].1],
        );
        let (lambda_rel, value) = parabolic_peak(x, y);
        maxima.push(PeakPoint { n_atoms: n, lambda_rel, value });
    }

    let points: Vec<(f64, f64)> = maxima.iter().map(|m| ((m.n_atoms as f64).log2(), m.value)).collect();
    let fit = linear_fit(&points)?;
    Ok(ScalingFit {
        quantity: "s_vn_peak".into(),
        exponent: fit.slope,
        std_error: fit.slope_error,
        window: [maxima[0].n_atoms as f64, maxima[maxima.len() - 1].n_atoms as f64],
        residual: fit.residual,
        maxima,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalExponents {
    /// `ln ε−` against `ln|λc − λ|`.
    pub eps_minus: ScalingFit,
    /// `ln l−` against `ln|λc − λ|`.
    pub length: ScalingFit,
    /// `S` against `log2|λc − λ|`.
    pub entropy: ScalingFit,
    /// `ν = −d ln l−/d ln|λc − λ|`.
    pub nu: f64,
    /// `z` from `zν = d ln ε−/d ln|λc − λ|`.
    pub z: f64,
}

/// Critical slopes from thermodynamic-limit rows below `λc`. `params`
/// supplies the frequencies; its coupling is ignored.
pub fn fit_critical_exponents(params: &ModelParams, reports: &[MeasureReport]) -> Result<CriticalExponents> {
    let lc = params.lambda_c();
    let rows: Vec<&MeasureReport> = reports
        .iter()
        .filter(|r| r.n_atoms == SystemSize::Infinite && r.lambda < lc)
        .collect();
    if rows.len() < 3 {
        return Err(SweepError::FitDomain(format!("need at least 3 rows below λc, got {}", rows.len())));
    }
    let mut eps = Vec::new();
    let mut length = Vec::new();
    let mut entropy = Vec::new();
    let mut window = [f64::INFINITY, 0.0f64];
    for r in rows {
        let distance = lc - r.lambda;
        let relative = distance / lc;
        if relative < MIN_CRITICAL_DISTANCE {
            return Err(SweepError::FitDomain(format!(
                "|λ − λc|/λc = {relative:e} is below {MIN_CRITICAL_DISTANCE:e}"
            )));
        }
        window = [window[0].min(relative), window[1].max(relative)];
        let solution = phase_solution(&params.with_lambda(r.lambda)?);
        eps.push((distance.ln(), solution.eps_minus().ln()));
        length.push((distance.ln(), soft_mode_length(&solution).ln()));
        if let Some(s) = r.s_vn {
            entropy.push((distance.log2(), s));
        }
    }
    let to_fit = |quantity: &str, points: &[(f64, f64)]| -> Result<ScalingFit> {
        let fit = linear_fit(points)?;
        Ok(ScalingFit {
            quantity: quantity.into(),
            exponent: fit.slope,
            std_error: fit.slope_error,
            window,
            residual: fit.residual,
            maxima: Vec::new(),
        })
    };
    let eps_minus = to_fit("eps_minus", &eps)?;
    let length = to_fit("l_minus", &length)?;
    let entropy = to_fit("s_vn", &entropy)?;
    let nu = -length.exponent;
    let z = eps_minus.exponent / nu;
    Ok(CriticalExponents { eps_minus, length, entropy, nu, z })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_planted_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 0.14 * i as f64 + 0.3)).collect();
        let f = linear_fit(&pts).unwrap();
        assert!((f.slope - 0.14).abs() < 1e-15 && (f.intercept - 0.3).abs() < 1e-15);
        assert!(f.slope_error < 1e-14 && f.residual < 1e-15);
    }

    #[test]
    fn parabola_vertex() {
        // y = 2 − (x − 0.3)²
        let f = |x: f64| 2.0 - (x - 0.3).powi(2);
        let (x, y) = parabolic_peak([0.0, 0.5, 1.5], [f(0.0), f(0.5), f(1.5)]);
        assert!((x - 0.3).abs() < 1e-14 && (y - 2.0).abs() < 1e-14);
        assert_eq!(parabolic_peak([0.0, 1.0, 2.0], [0.0, 1.0, 2.0]), (1.0, 1.0));
    }
}
