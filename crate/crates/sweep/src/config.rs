//! Sweep configuration: defaults, a flat `key = value` file format, and
//! flag overrides. Coupling bounds are in units of `λc`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dicke_core::{make_params, CutoffPolicy, Measure, ModelParams, SystemSize};

use crate::error::{Result, SweepError};

/// How the coupling grid is laid out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaScale {
    /// Evenly spaced `λ/λc` from `lambda_min` to `lambda_max`.
    Linear,
    /// Log-spaced distances `|λ − λc|/λc ∈ [lambda_min, lambda_max]` on both
    /// sides of the critical point.
    Log,
    /// As `Log`, below `λc` only.
    LogBelow,
    /// As `Log`, above `λc` only.
    LogAbove,
}

impl FromStr for LambdaScale {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" | "lin" => Ok(LambdaScale::Linear),
            "log" => Ok(LambdaScale::Log),
            "log-below" => Ok(LambdaScale::LogBelow),
            "log-above" => Ok(LambdaScale::LogAbove),
            other => Err(SweepError::Config(format!("unknown lambda scale {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Backend {
    Ed,
    Td,
    Perturbative,
    All,
}

impl Backend {
    pub fn includes(&self, other: Backend) -> bool {
        *self == Backend::All || *self == other
    }
}

impl FromStr for Backend {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ed" => Ok(Backend::Ed),
            "td" => Ok(Backend::Td),
            "perturbative" | "pert" => Ok(Backend::Perturbative),
            "all" => Ok(Backend::All),
            other => Err(SweepError::Config(format!("unknown backend {other:?}"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Ed => "ed",
            Backend::Td => "td",
            Backend::Perturbative => "perturbative",
            Backend::All => "all",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(SweepError::Config(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub omega: f64,
    pub omega0: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub lambda_steps: usize,
    pub lambda_scale: LambdaScale,
    pub n_atoms: Vec<SystemSize>,
    pub measures: Vec<Measure>,
    pub backend: Backend,
    pub cutoff_start: usize,
    pub cutoff_growth: f64,
    /// Absolute ground-energy tolerance of the cutoff search.
    pub tol: f64,
    /// `None` writes to standard output.
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let policy = CutoffPolicy::default();
        Self {
            omega: 1.0,
            omega0: 1.0,
            lambda_min: 0.0,
            lambda_max: 3.0,
            lambda_steps: 31,
            lambda_scale: LambdaScale::Linear,
            n_atoms: vec![SystemSize::Finite(8)],
            measures: vec![Measure::SVn],
            backend: Backend::Ed,
            cutoff_start: policy.n_max_start,
            cutoff_growth: policy.growth,
            tol: policy.energy_tol,
            out: None,
            format: OutputFormat::Csv,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| SweepError::Config(format!("{key}: cannot parse {value:?}")))
}

fn parse_list<T: FromStr<Err = E>, E: fmt::Display>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<T>().map_err(|e| SweepError::Config(format!("{key}: {e}"))))
        .collect()
}

impl SweepConfig {
    /// Sets one field from its textual form. Keys match the long flag names;
    /// `_` and `-` are interchangeable.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('_', "-");
        match key.as_str() {
            "omega" => self.omega = parse(&key, value)?,
            "omega0" => self.omega0 = parse(&key, value)?,
            "lambda-min" => self.lambda_min = parse(&key, value)?,
            "lambda-max" => self.lambda_max = parse(&key, value)?,
            "lambda-steps" => self.lambda_steps = parse(&key, value)?,
            "lambda-scale" => self.lambda_scale = value.parse()?,
            "n-atoms" => self.n_atoms = parse_list(&key, value)?,
            "measures" => self.measures = parse_list(&key, value)?,
            "backend" => self.backend = value.parse()?,
            "cutoff-start" => self.cutoff_start = parse(&key, value)?,
            "cutoff-growth" => self.cutoff_growth = parse(&key, value)?,
            "tol" => self.tol = parse(&key, value)?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "format" => self.format = value.parse()?,
            _ => return Err(SweepError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a flat config text: one `key = value` per line, `#` starts a
    /// comment, blank lines ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (number, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| SweepError::Config(format!("line {}: expected key = value", number + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SweepError::Config(format!("cannot read {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(SweepError::Config(msg));
        if !(self.omega > 0.0 && self.omega0 > 0.0) || !self.omega.is_finite() || !self.omega0.is_finite() {
            return fail(format!("frequencies must be positive and finite, got ω={} ω0={}", self.omega, self.omega0));
        }
        if self.lambda_steps < 2 {
            return fail(format!("lambda-steps must be at least 2, got {}", self.lambda_steps));
        }
        if !(self.lambda_min.is_finite() && self.lambda_max.is_finite() && self.lambda_min < self.lambda_max) {
            return fail(format!("need lambda-min < lambda-max, got {} and {}", self.lambda_min, self.lambda_max));
        }
        match self.lambda_scale {
            LambdaScale::Linear if self.lambda_min < 0.0 => {
                return fail(format!("coupling must be non-negative, got lambda-min {}", self.lambda_min))
            }
            LambdaScale::Log | LambdaScale::LogBelow if !(self.lambda_min > 0.0 && self.lambda_max <= 1.0) => {
                return fail("log spacing below λc needs 0 < lambda-min < lambda-max ≤ 1".into())
            }
            LambdaScale::LogAbove if self.lambda_min <= 0.0 => {
                return fail("log spacing needs lambda-min > 0".into())
            }
            _ => {}
        }
        if self.n_atoms.is_empty() {
            return fail("n-atoms list is empty".into());
        }
        if self.measures.is_empty() {
            return fail("measures list is empty".into());
        }
        if !(self.cutoff_growth > 1.0) {
            return fail(format!("cutoff-growth must exceed 1, got {}", self.cutoff_growth));
        }
        if !(self.tol > 0.0) {
            return fail(format!("tol must be positive, got {}", self.tol));
        }
        if self.cutoff_start == 0 {
            return fail("cutoff-start must be at least 1".into());
        }
        Ok(())
    }

    /// Sorted `λ/λc` values of the grid.
    pub fn lambda_grid(&self) -> Vec<f64> {
        let steps = self.lambda_steps;
        let (lo, hi) = (self.lambda_min, self.lambda_max);
        let last = (steps - 1) as f64;
        let mut grid: Vec<f64> = match self.lambda_scale {
            LambdaScale::Linear => (0..steps).map(|i| lo + (hi - lo) * i as f64 / last).collect(),
            scale => {
                let distances: Vec<f64> = (0..steps).map(|i| lo * (hi / lo).powf(i as f64 / last)).collect();
                let below = distances.iter().map(|d| 1.0 - d);
                let above = distances.iter().map(|d| 1.0 + d);
                match scale {
                    LambdaScale::LogBelow => below.collect(),
                    LambdaScale::LogAbove => above.collect(),
                    _ => below.chain(above).collect(),
                }
            }
        };
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        grid
    }

    /// Model parameters at `λ/λc = ratio` for `n_atoms` (any placeholder for
    /// the thermodynamic limit).
    pub fn params(&self, ratio: f64, n_atoms: usize) -> Result<ModelParams> {
        Ok(make_params(self.omega, self.omega0, 0.0, n_atoms)?.at_relative_coupling(ratio)?)
    }

    pub fn cutoff_policy(&self) -> CutoffPolicy {
        CutoffPolicy {
            n_max_start: self.cutoff_start,
            growth: self.cutoff_growth,
            energy_tol: self.tol,
            ..CutoffPolicy::default()
        }
    }

    /// Requested measures that are not fixed report columns.
    pub fn extra_columns(&self) -> Vec<Measure> {
        let mut extras: Vec<Measure> =
            self.measures.iter().copied().filter(|m| matches!(m, Measure::TEff | Measure::Kappa)).collect();
        extras.sort();
        extras.dedup();
        extras
    }
}
