use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dicke_core::{assemble_hamiltonian, build_basis};
use dicke_sweep::emit::{to_csv, to_json, write_output, Fits};
use dicke_sweep::reproduce::{
    average_entropy_config, average_entropy_dataset, entropy_curves_config, scaling_table, temperature_dataset,
};
use dicke_sweep::{
    fit_critical_exponents, fit_entropy_scaling, run_sweep, LambdaScale, OutputFormat, SweepConfig, SweepError,
    SweepOutcome,
};

/// Ground-state entanglement of the single-mode Dicke model.
#[derive(Parser)]
#[command(name = "dicke", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate measures over a coupling grid and a list of atom numbers.
    Sweep(SweepArgs),
    /// Print the Hamiltonian as sorted `row col value` lines.
    DumpMatrix(DumpArgs),
    /// Run a preset sweep and emit its dataset.
    Reproduce(ReproduceArgs),
}

/// Every flag overrides the matching key of `--config`.
#[derive(Args)]
struct SweepArgs {
    /// Flat `key = value` file with the same keys as the long flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    omega: Option<String>,
    #[arg(long)]
    omega0: Option<String>,
    /// Lower grid bound: `λ/λc` (linear) or `|λ − λc|/λc` (log scales).
    #[arg(long)]
    lambda_min: Option<String>,
    #[arg(long)]
    lambda_max: Option<String>,
    #[arg(long)]
    lambda_steps: Option<String>,
    /// linear, log, log-below or log-above.
    #[arg(long)]
    lambda_scale: Option<String>,
    /// Comma list of atom numbers; `inf` selects the thermodynamic limit.
    #[arg(long)]
    n_atoms: Option<String>,
    /// Comma list from s_vn, l_lin, q_avg, ipr_inv, t_eff, kappa.
    #[arg(long)]
    measures: Option<String>,
    /// ed, td, perturbative or all.
    #[arg(long)]
    backend: Option<String>,
    #[arg(long)]
    cutoff_start: Option<String>,
    #[arg(long)]
    cutoff_growth: Option<String>,
    /// Ground-energy tolerance of the cutoff search.
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
}

impl SweepArgs {
    fn into_config(self) -> Result<SweepConfig, SweepError> {
        let mut config = SweepConfig::default();
        if let Some(path) = &self.config {
            config.apply_file(path)?;
        }
        let flags = [
            ("omega", self.omega),
            ("omega0", self.omega0),
            ("lambda-min", self.lambda_min),
            ("lambda-max", self.lambda_max),
            ("lambda-steps", self.lambda_steps),
            ("lambda-scale", self.lambda_scale),
            ("n-atoms", self.n_atoms),
            ("measures", self.measures),
            ("backend", self.backend),
            ("cutoff-start", self.cutoff_start),
            ("cutoff-growth", self.cutoff_growth),
            ("tol", self.tol),
            ("out", self.out),
            ("format", self.format),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                config.set(key, &v)?;
            }
        }
        config.validate()?;
        Ok(config)
    }
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    omega0: f64,
    /// Coupling in units of `λc`.
    #[arg(long)]
    lambda_rel: f64,
    #[arg(long)]
    n_atoms: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// S, L and P⁻¹ for N = 8, 32 and N → ∞ (CSV).
    EntropyCurves,
    /// Effective temperature and squeezing below λc (CSV).
    Temperature,
    /// Average linear entropy for N = 8, 16 and N → ∞ with dQ/dλ (CSV).
    AverageEntropy,
    /// Critical exponents and finite-size entropy scaling (JSON).
    Scaling,
}

#[derive(Args)]
struct ReproduceArgs {
    preset: Preset,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    omega0: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Fits that the sweep's shape supports; a fit that does not apply is left
/// out and noted on stderr.
fn opportunistic_fits(config: &SweepConfig, outcome: &SweepOutcome) -> Fits {
    let mut fits = Fits::default();
    let finite = config.n_atoms.iter().filter(|s| matches!(s, dicke_core::SystemSize::Finite(_))).count();
    if finite >= 4 {
        match fit_entropy_scaling(&outcome.reports) {
            Ok(f) => fits.entropy_scaling = Some(f),
            Err(e) => eprintln!("entropy scaling fit skipped: {e}"),
        }
    }
    if matches!(config.lambda_scale, LambdaScale::Log | LambdaScale::LogBelow) {
        let fit = config.params(0.0, 1).map_err(SweepError::from).and_then(|p| fit_critical_exponents(&p, &outcome.reports));
        match fit {
            Ok(f) => fits.critical = Some(f),
            Err(e) => eprintln!("critical exponent fit skipped: {e}"),
        }
    }
    fits
}

fn report_errors(outcome: &SweepOutcome) {
    for e in &outcome.errors {
        eprintln!("point λ/λc={} N={} backend={}: {}", e.lambda_rel, e.n_atoms, e.backend, e.message);
    }
}

fn sweep(args: SweepArgs) -> Result<ExitCode, SweepError> {
    let config = args.into_config()?;
    let outcome = run_sweep(&config)?;
    let text = match config.format {
        OutputFormat::Csv => to_csv(&outcome.reports, &config.extra_columns()),
        OutputFormat::Json => to_json(&outcome.reports, &opportunistic_fits(&config, &outcome), &outcome.errors),
    };
    write_output(config.out.as_deref(), &text)?;
    report_errors(&outcome);
    Ok(if outcome.is_complete() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn dump(args: DumpArgs) -> Result<ExitCode, SweepError> {
    let config = SweepConfig { omega: args.omega, omega0: args.omega0, ..SweepConfig::default() };
    let params = config.params(args.lambda_rel, args.n_atoms)?;
    let basis = build_basis(&params, args.n_max)?;
    let mut buffer = Vec::new();
    assemble_hamiltonian(&params, &basis)
        .write_dump(&mut buffer)
        .map_err(|source| SweepError::Io { path: "<buffer>".into(), source })?;
    write_output(args.out.as_deref(), &String::from_utf8(buffer).expect("ascii dump"))?;
    Ok(ExitCode::SUCCESS)
}

fn reproduce(args: ReproduceArgs) -> Result<ExitCode, SweepError> {
    let out: Option<&Path> = args.out.as_deref();
    let (text, outcome) = match args.preset {
        Preset::EntropyCurves => {
            let config = entropy_curves_config(args.omega, args.omega0);
            let outcome = run_sweep(&config)?;
            (to_csv(&outcome.reports, &[]), outcome)
        }
        Preset::Temperature => (temperature_dataset(args.omega, args.omega0, 99)?, SweepOutcome::default()),
        Preset::AverageEntropy => {
            let config = average_entropy_config(args.omega, args.omega0);
            let outcome = run_sweep(&config)?;
            (average_entropy_dataset(&config, &outcome)?, outcome)
        }
        Preset::Scaling => {
            let (fits, critical, peaks) = scaling_table(args.omega, args.omega0)?;
            let mut reports = critical.reports;
            reports.extend(peaks.reports);
            let mut errors = critical.errors;
            errors.extend(peaks.errors);
            let outcome = SweepOutcome { reports, errors };
            (to_json(&outcome.reports, &fits, &outcome.errors), outcome)
        }
    };
    write_output(out, &text)?;
    report_errors(&outcome);
    Ok(if outcome.is_complete() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::DumpMatrix(args) => dump(args),
        Command::Reproduce(args) => reproduce(args),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })
}
