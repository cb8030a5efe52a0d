//! Per-point measurement records and their JSON / CSV encodings.

use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::eigen::GroundState;
use crate::entanglement::{
    average_linear_entropy_q, collective_expectations, linear_entropy, partial_trace, von_neumann_entropy, Keep,
};
use crate::error::{Error, Result};
use crate::ipr::{inverse_participation_ratio, QuadratureGrid};
use crate::model::ModelParams;
use crate::perturbative::perturbative_entropy;
use crate::thermo::{
    effective_temperature, entropy_td, inversion_td, ipr_td, linear_entropy_td, phase_solution, q_td, rdm_params,
    LobeConvention,
};

/// Fixed columns of the report encoding, in order.
pub const REPORT_COLUMNS: [&str; 11] = [
    "lambda", "lambda_rel", "n_atoms", "n_max", "s_vn", "l_lin", "q_avg", "ipr_inv", "jz_mean", "residual",
    "converged",
];

/// Atom number, or the thermodynamic limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SystemSize {
    Finite(usize),
    Infinite,
}

impl fmt::Display for SystemSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemSize::Finite(n) => write!(f, "{n}"),
            SystemSize::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for SystemSize {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(SystemSize::Infinite);
        }
        match s.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(SystemSize::Finite(n)),
            _ => Err(Error::Domain(format!("invalid atom number {s:?}"))),
        }
    }
}

impl Serialize for SystemSize {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SystemSize::Finite(n) => s.serialize_u64(*n as u64),
            SystemSize::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Optional measures a report can carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    SVn,
    LLin,
    QAvg,
    IprInv,
    TEff,
    Kappa,
}

impl Measure {
    pub const ALL: [Measure; 6] =
        [Measure::SVn, Measure::LLin, Measure::QAvg, Measure::IprInv, Measure::TEff, Measure::Kappa];

    pub fn key(&self) -> &'static str {
        match self {
            Measure::SVn => "s_vn",
            Measure::LLin => "l_lin",
            Measure::QAvg => "q_avg",
            Measure::IprInv => "ipr_inv",
            Measure::TEff => "t_eff",
            Measure::Kappa => "kappa",
        }
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        Measure::ALL
            .into_iter()
            .find(|m| m.key() == key)
            .ok_or_else(|| Error::Domain(format!("unknown measure {s:?}")))
    }
}

/// One (λ, N) measurement. Absent values encode as JSON `null` / empty CSV
/// cells; non-finite values as the strings `inf`, `-inf`, `nan`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub lambda: f64,
    pub lambda_rel: f64,
    pub n_atoms: SystemSize,
    pub n_max: Option<usize>,
    pub s_vn: Option<f64>,
    pub l_lin: Option<f64>,
    pub q_avg: Option<f64>,
    pub ipr_inv: Option<f64>,
    /// Inversion `⟨J_z⟩/j`.
    pub jz_mean: Option<f64>,
    pub residual: Option<f64>,
    pub converged: bool,
    pub t_eff: Option<f64>,
    pub kappa: Option<f64>,
}

impl MeasureReport {
    pub fn empty(params: &ModelParams, n_atoms: SystemSize) -> Self {
        Self {
            lambda: params.lambda(),
            lambda_rel: params.lambda_rel(),
            n_atoms,
            n_max: None,
            s_vn: None,
            l_lin: None,
            q_avg: None,
            ipr_inv: None,
            jz_mean: None,
            residual: None,
            converged: true,
            t_eff: None,
            kappa: None,
        }
    }

    pub fn extra(&self, m: Measure) -> Option<f64> {
        match m {
            Measure::TEff => self.t_eff,
            Measure::Kappa => self.kappa,
            _ => None,
        }
    }

    /// CSV line with the fixed columns followed by `extras`.
    pub fn csv_row(&self, extras: &[Measure]) -> String {
        let mut cells = vec![
            format_number(self.lambda),
            format_number(self.lambda_rel),
            self.n_atoms.to_string(),
            self.n_max.map(|n| n.to_string()).unwrap_or_default(),
            optional(self.s_vn),
            optional(self.l_lin),
            optional(self.q_avg),
            optional(self.ipr_inv),
            optional(self.jz_mean),
            optional(self.residual),
            self.converged.to_string(),
        ];
        cells.extend(extras.iter().map(|&m| optional(self.extra(m))));
        cells.join(",")
    }

    pub fn csv_header(extras: &[Measure]) -> String {
        let mut cols: Vec<&str> = REPORT_COLUMNS.to_vec();
        cols.extend(extras.iter().map(Measure::key));
        cols.join(",")
    }
}

/// Shortest round-trip decimal; exponent form outside `[1e-5, 1e16)`,
/// `nan`/`inf`/`-inf` for non-finite values.
pub fn format_number(x: f64) -> String {
    let magnitude = x.abs();
    if x.is_nan() {
        "nan".into()
    } else if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&magnitude) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

/// Serializes a float, mapping non-finite values to strings.
struct JsonFloat(Option<f64>);

impl Serialize for JsonFloat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            None => s.serialize_none(),
            Some(x) if x.is_finite() => s.serialize_f64(x),
            Some(x) => s.serialize_str(&format_number(x)),
        }
    }
}

impl Serialize for MeasureReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("lambda", &JsonFloat(Some(self.lambda)))?;
        map.serialize_entry("lambda_rel", &JsonFloat(Some(self.lambda_rel)))?;
        map.serialize_entry("n_atoms", &self.n_atoms)?;
        map.serialize_entry("n_max", &self.n_max)?;
        map.serialize_entry("s_vn", &JsonFloat(self.s_vn))?;
        map.serialize_entry("l_lin", &JsonFloat(self.l_lin))?;
        map.serialize_entry("q_avg", &JsonFloat(self.q_avg))?;
        map.serialize_entry("ipr_inv", &JsonFloat(self.ipr_inv))?;
        map.serialize_entry("jz_mean", &JsonFloat(self.jz_mean))?;
        map.serialize_entry("residual", &JsonFloat(self.residual))?;
        map.serialize_entry("converged", &self.converged)?;
        if self.t_eff.is_some() {
            map.serialize_entry("t_eff", &JsonFloat(self.t_eff))?;
        }
        if self.kappa.is_some() {
            map.serialize_entry("kappa", &JsonFloat(self.kappa))?;
        }
        map.end()
    }
}

/// Finite-N measures of a solved ground state. `T_eff` and `κ` have no
/// finite-N counterpart and stay empty.
pub fn measure_ground_state(params: &ModelParams, state: &GroundState, measures: &[Measure]) -> Result<MeasureReport> {
    let n = state.n_atoms();
    let mut report = MeasureReport::empty(params, SystemSize::Finite(n));
    report.n_max = Some(state.n_max_used());
    report.residual = Some(state.residual);
    report.converged = state.converged;
    report.jz_mean = Some(collective_expectations(state).jz / (n as f64 / 2.0));

    let atoms = partial_trace(state, Keep::Atoms)?;
    for m in measures {
        match m {
            Measure::SVn => report.s_vn = Some(von_neumann_entropy(&atoms)?),
            Measure::LLin => report.l_lin = Some(linear_entropy(&atoms, n + 1)?),
            Measure::QAvg => report.q_avg = Some(average_linear_entropy_q(state)?.q),
            Measure::IprInv => {
                let grid = QuadratureGrid::auto(state, params);
                report.ipr_inv = Some(inverse_participation_ratio(state, params, &grid)?);
            }
            Measure::TEff | Measure::Kappa => {}
        }
    }
    Ok(report)
}

/// Thermodynamic-limit record; entries that diverge at `λc` are `+∞`.
pub fn measure_thermodynamic(params: &ModelParams, measures: &[Measure], lobes: LobeConvention) -> MeasureReport {
    let mut report = MeasureReport::empty(params, SystemSize::Infinite);
    report.jz_mean = Some(inversion_td(params));
    let rdm = rdm_params(&phase_solution(params));
    for m in measures {
        match m {
            Measure::SVn => report.s_vn = Some(entropy_td(params, lobes)),
            Measure::LLin => report.l_lin = Some(linear_entropy_td(params)),
            Measure::QAvg => report.q_avg = Some(q_td(params)),
            Measure::IprInv => report.ipr_inv = Some(ipr_td(params)),
            Measure::TEff => {
                report.t_eff = effective_temperature(&rdm, params.omega()).ok().map(|t| t.temperature)
            }
            Measure::Kappa => report.kappa = Some(rdm.kappa),
        }
    }
    report
}

/// Weak-coupling record: entropy only.
pub fn measure_perturbative(params: &ModelParams) -> MeasureReport {
    let mut report = MeasureReport::empty(params, SystemSize::Finite(params.n_atoms()));
    report.s_vn = Some(perturbative_entropy(params).s_pert);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_params;

    #[test]
    fn json_keys_are_fixed_and_ordered() {
        let p = make_params(1.0, 1.0, 0.5, 8).unwrap();
        let r = measure_thermodynamic(&p, &[Measure::SVn, Measure::LLin], LobeConvention::TwoLobe);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"lambda":0.5,"lambda_rel":1.0,"n_atoms":"inf","n_max":null,"s_vn":"inf","l_lin":1.0,"q_avg":null,"ipr_inv":null,"jz_mean":-1.0,"residual":null,"converged":true}"#
        );
    }

    #[test]
    fn csv_row_matches_header() {
        let p = make_params(1.0, 1.0, 0.0, 2).unwrap();
        let r = measure_perturbative(&p);
        assert_eq!(
            MeasureReport::csv_header(&[]),
            "lambda,lambda_rel,n_atoms,n_max,s_vn,l_lin,q_avg,ipr_inv,jz_mean,residual,converged"
        );
        assert_eq!(r.csv_row(&[]), "0,0,2,,0,,,,,,true");
        assert_eq!(r.csv_row(&[Measure::Kappa]).split(',').count(), 12);
    }

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(7.5e-15), "7.5e-15");
        assert_eq!(format_number(f64::INFINITY), "inf");
        assert_eq!(format_number(f64::NAN), "nan");
        assert_eq!(format_number(0.1 + 0.2).parse::<f64>().unwrap(), 0.1 + 0.2);
    }

    #[test]
    fn parse_sizes_and_measures() {
        assert_eq!("inf".parse::<SystemSize>().unwrap(), SystemSize::Infinite);
        assert_eq!(" 32".parse::<SystemSize>().unwrap(), SystemSize::Finite(32));
        assert!("0".parse::<SystemSize>().is_err());
        assert_eq!("T_eff".parse::<Measure>().unwrap(), Measure::TEff);
        assert!("entropy".parse::<Measure>().is_err());
        assert!(SystemSize::Finite(64) < SystemSize::Infinite);
    }
}
