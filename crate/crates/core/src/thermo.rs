//! Exact thermodynamic-limit (`N → ∞`) solution of the Dicke model.
//!
//! After the Holstein-Primakoff mapping the ground state is a two-mode
//! Gaussian in the field coordinate `x` and the atomic coordinate `y`. In
//! either phase the quadratic form is
//!
//! ```text
//! H = ½(p_x² + p_y²) + ½ qᵀ K q,
//! normal:       K = [[ω², 2λ√(ωω0)], [2λ√(ωω0), ω0²]]
//! superradiant: K = [[ω², ωω0],      [ωω0,       ω0²/μ²]],  μ = λc²/λ²
//! ```
//!
//! with eigenfrequencies `ε∓` and mixing angle `γ` (`c = cos γ` is the field
//! component of the soft `ε−` mode). Tracing out the field leaves the
//! Gaussian kernel
//!
//! ```text
//! ρ(y, y') ∝ exp[ −(2ε−ε+ + D)/(4A) (y² + y'²) + D/(2A) y y' ],
//! A = ε− c² + ε+ s²,   D = (ε− − ε+)² c² s²,
//! ```
//!
//! which is the density matrix of a thermal oscillator with
//! `cosh(Ω/T) = 1 + 2ε−ε+/D`. In the superradiant phase the atomic coordinate
//! of each displaced lobe is rescaled by `√(ω0/ω̃)`, a local change of
//! variables that leaves every spectral quantity alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;

const LN_2: f64 = std::f64::consts::LN_2;
const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Normal,
    Superradiant,
}

pub fn phase_of(params: &ModelParams) -> Phase {
    if params.lambda() <= params.lambda_c() {
        Phase::Normal
    } else {
        Phase::Superradiant
    }
}

/// Mixing angle `½·atan2(2 K_xy, K_yy − K_xx)` of a symmetric 2×2 form.
fn mixing_angle(k_xx: f64, k_xy: f64, k_yy: f64) -> f64 {
    0.5 * (2.0 * k_xy).atan2(k_yy - k_xx)
}

/// `(ε−, ε+)` from the trace, the discriminant root and a cancellation-free
/// determinant.
fn excitation_energies(trace: f64, root: f64, det: f64) -> (f64, f64) {
    let plus_sq = 0.5 * (trace + root);
    let minus_sq = (det / plus_sq).max(0.0);
    (minus_sq.sqrt(), plus_sq.sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalPhaseSolution {
    pub eps_minus: f64,
    pub eps_plus: f64,
    pub gamma1: f64,
    pub c: f64,
    pub s: f64,
    /// Field frequency, used as the thermal-oscillator frequency.
    pub omega: f64,
}

/// Excitation energies and mixing angle for `0 ≤ λ ≤ λc`.
pub fn normal_solution(params: &ModelParams) -> Result<NormalPhaseSolution> {
    let (w, w0, lambda, lc) = (params.omega(), params.omega0(), params.lambda(), params.lambda_c());
    if lambda > lc {
        return Err(Error::PhaseDomain(format!("normal phase needs λ ≤ λc, got λ/λc = {}", lambda / lc)));
    }
    let trace = w * w + w0 * w0;
    let root = ((w0 * w0 - w * w).powi(2) + 16.0 * lambda * lambda * w * w0).sqrt();
    // det K = ω²ω0² − 4λ²ωω0 = 4ωω0 (λc − λ)(λc + λ)
    let det = 4.0 * w * w0 * (lc - lambda) * (lc + lambda);
    let (eps_minus, eps_plus) = excitation_energies(trace, root, det);
    let gamma1 = mixing_angle(w * w, 2.0 * lambda * (w * w0).sqrt(), w0 * w0);
    Ok(NormalPhaseSolution { eps_minus, eps_plus, gamma1, c: gamma1.cos(), s: gamma1.sin(), omega: w })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SRPhaseSolution {
    pub eps_minus: f64,
    pub eps_plus: f64,
    pub gamma2: f64,
    pub c: f64,
    pub s: f64,
    /// `λc²/λ²`.
    pub mu: f64,
    /// Field displacement per unit `j`: `(2λ/ω)² (1 − μ)/2`.
    pub alpha: f64,
    /// Atomic displacement per unit `j`: `1 − μ`.
    pub beta_disp: f64,
    /// `ω̃ = ω0 (1 + μ)/(2μ)`.
    pub omega_tilde: f64,
    pub omega: f64,
    pub omega0: f64,
}

impl SRPhaseSolution {
    /// Lobe centre in the field coordinate, `√(2α/ω)`, at pseudo-spin `j`.
    pub fn field_offset(&self, j: f64) -> f64 {
        (2.0 * self.alpha * j / self.omega).sqrt()
    }

    /// Lobe centre in the atomic coordinate, `√(2β/ω0)`, at pseudo-spin `j`.
    pub fn atom_offset(&self, j: f64) -> f64 {
        (2.0 * self.beta_disp * j / self.omega0).sqrt()
    }

    /// Jacobian `√(ω0/ω̃)` between the atomic coordinate and the rescaled
    /// lobe coordinate.
    pub fn atom_scale(&self) -> f64 {
        (self.omega0 / self.omega_tilde).sqrt()
    }
}

/// Single-lobe solution for `λ ≥ λc`.
pub fn sr_solution(params: &ModelParams) -> Result<SRPhaseSolution> {
    let (w, w0, lambda, lc) = (params.omega(), params.omega0(), params.lambda(), params.lambda_c());
    if lambda < lc {
        return Err(Error::PhaseDomain(format!(
            "superradiant phase needs λ ≥ λc, got λ/λc = {}",
            lambda / lc
        )));
    }
    let mu = (lc / lambda).powi(2);
    // 1 − μ = (λ − λc)(λ + λc)/λ², exact at the critical point
    let one_minus_mu = (lambda - lc) * (lambda + lc) / (lambda * lambda);
    let stiff = w0 * w0 / (mu * mu);
    let trace = stiff + w * w;
    let root = ((stiff - w * w).powi(2) + 4.0 * w * w * w0 * w0).sqrt();
    let det = w * w * w0 * w0 * one_minus_mu * (1.0 + mu) / (mu * mu);
    let (eps_minus, eps_plus) = excitation_energies(trace, root, det);
    let gamma2 = mixing_angle(w * w, w * w0, stiff);
    Ok(SRPhaseSolution {
        eps_minus,
        eps_plus,
        gamma2,
        c: gamma2.cos(),
        s: gamma2.sin(),
        mu,
        alpha: (2.0 * lambda / w).powi(2) * one_minus_mu / 2.0,
        beta_disp: one_minus_mu,
        omega_tilde: w0 * (1.0 + mu) / (2.0 * mu),
        omega: w,
        omega0: w0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PhaseSolution {
    Normal(NormalPhaseSolution),
    Superradiant(SRPhaseSolution),
}

/// Normal-phase solution for `λ ≤ λc`, single-lobe superradiant otherwise.
pub fn phase_solution(params: &ModelParams) -> PhaseSolution {
    match phase_of(params) {
        Phase::Normal => PhaseSolution::Normal(normal_solution(params).expect("λ ≤ λc")),
        Phase::Superradiant => PhaseSolution::Superradiant(sr_solution(params).expect("λ > λc")),
    }
}

impl PhaseSolution {
    pub fn phase(&self) -> Phase {
        match self {
            PhaseSolution::Normal(_) => Phase::Normal,
            PhaseSolution::Superradiant(_) => Phase::Superradiant,
        }
    }

    /// `(ε−, ε+, c, s, ω)`.
    fn parts(&self) -> (f64, f64, f64, f64, f64) {
        match self {
            PhaseSolution::Normal(n) => (n.eps_minus, n.eps_plus, n.c, n.s, n.omega),
            PhaseSolution::Superradiant(s) => (s.eps_minus, s.eps_plus, s.c, s.s, s.omega),
        }
    }

    pub fn eps_minus(&self) -> f64 {
        self.parts().0
    }

    pub fn eps_plus(&self) -> f64 {
        self.parts().1
    }
}

/// Parameters of the one-mode Gaussian atomic density matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianRDMParams {
    pub eps_minus: f64,
    pub eps_plus: f64,
    pub c: f64,
    pub s: f64,
    /// `(ε− − ε+)² c² s²`.
    pub d_coeff: f64,
    /// Squeezing rescale of the atomic coordinate.
    pub kappa: f64,
    /// Thermal-oscillator frequency `Ω` (the field frequency `ω`).
    pub omega: f64,
    /// Set when `ε− = 0`, i.e. at the critical point.
    pub divergent: bool,
}

/// Builds the atomic Gaussian RDM, fixing `κ` by the thermal-oscillator
/// convention `m = 1`, `Ω = ω`.
pub fn rdm_params(solution: &PhaseSolution) -> GaussianRDMParams {
    let (eps_minus, eps_plus, c, s, omega) = solution.parts();
    let d_coeff = (eps_minus - eps_plus).powi(2) * c * c * s * s;
    let a = eps_minus * c * c + eps_plus * s * s;
    let product = eps_minus * eps_plus;
    // κ² = √(cosh²βΩ − 1)·D/(2ωA) = √(ε−ε+(ε−ε+ + D))/(ωA), finite as D → 0
    let kappa = ((product * (product + d_coeff)).sqrt() / (omega * a)).sqrt();
    GaussianRDMParams { eps_minus, eps_plus, c, s, d_coeff, kappa, omega, divergent: eps_minus == 0.0 }
}

impl GaussianRDMParams {
    /// `A = ε− c² + ε+ s²`.
    pub fn a_coeff(&self) -> f64 {
        self.eps_minus * self.c * self.c + self.eps_plus * self.s * self.s
    }

    /// `C = ε− s² + ε+ c²`, the same quantity for the field mode.
    pub fn c_coeff(&self) -> f64 {
        self.eps_minus * self.s * self.s + self.eps_plus * self.c * self.c
    }

    /// `1 + 2ε−ε+/D`; infinite for a pure state.
    pub fn cosh_beta_omega(&self) -> f64 {
        if self.d_coeff == 0.0 {
            f64::INFINITY
        } else {
            1.0 + 2.0 * self.eps_minus * self.eps_plus / self.d_coeff
        }
    }

    /// `Ω/T = arccosh(1 + 2ε−ε+/D)`, evaluated without forming `1 + q`.
    pub fn beta_omega(&self) -> f64 {
        if self.d_coeff == 0.0 {
            return f64::INFINITY;
        }
        let q = 2.0 * self.eps_minus * self.eps_plus / self.d_coeff;
        (q + (q * (2.0 + q)).sqrt()).ln_1p()
    }

    /// `Tr ρ² = √(ε−ε+ / (A C))`.
    pub fn purity(&self) -> f64 {
        (self.eps_minus * self.eps_plus / (self.a_coeff() * self.c_coeff())).sqrt()
    }

    /// Kernel `ρ(u, u')` in the squeezed coordinate `u = κ y`, normalised so
    /// that `∫ ρ(u, u) du = 1`. Requires `κ > 0`.
    pub fn kernel(&self, u: f64, u_prime: f64) -> f64 {
        let a = self.a_coeff();
        let k2 = self.kappa * self.kappa;
        let diag = (2.0 * self.eps_minus * self.eps_plus + self.d_coeff) / (4.0 * k2 * a);
        let cross = self.d_coeff / (2.0 * k2 * a);
        let norm = (self.eps_minus * self.eps_plus / (std::f64::consts::PI * a)).sqrt() / self.kappa;
        norm * (-diag * (u * u + u_prime * u_prime) + cross * u * u_prime).exp()
    }
}

/// Thermal oscillator (`k_B = ħ = 1`) whose density matrix reproduces the
/// atomic RDM.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalOscillator {
    pub omega: f64,
    pub mass: f64,
    pub temperature: f64,
    pub inverse_temperature: f64,
}

pub fn effective_temperature(rdm: &GaussianRDMParams, omega: f64) -> Result<ThermalOscillator> {
    let rhs = rdm.cosh_beta_omega();
    if rhs < 1.0 || rhs.is_nan() {
        return Err(Error::NumericalIntegrity(format!("cosh βΩ = {rhs} < 1")));
    }
    let beta_omega = rdm.beta_omega();
    let inverse_temperature = beta_omega / omega;
    Ok(ThermalOscillator { omega, mass: 1.0, temperature: inverse_temperature.recip(), inverse_temperature })
}

/// Entropy in bits of a thermal oscillator at `x = Ω/T`:
/// `[x n̄ − ln(1 − e^{−x})]/ln 2` with `n̄ = 1/(e^x − 1)`.
pub fn thermal_entropy_bits(x: f64) -> f64 {
    if x == f64::INFINITY {
        return 0.0;
    }
    if x == 0.0 {
        return f64::INFINITY;
    }
    let occupation = 1.0 / x.exp_m1();
    ((x * occupation - (-(-x).exp_m1()).ln()) / LN_2).max(0.0)
}

/// Entropy of the Gaussian RDM; depends on `Ω/T` only, not on `κ`.
pub fn gaussian_entropy(rdm: &GaussianRDMParams) -> f64 {
    thermal_entropy_bits(rdm.beta_omega())
}

/// How the superradiant ground state is represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LobeConvention {
    /// Positive-parity superposition of both displaced lobes (finite-N limit).
    #[default]
    TwoLobe,
    /// One broken-symmetry lobe.
    SingleLobe,
}

/// Atom-field von Neumann entropy in bits; `+∞` at `λ = λc`.
pub fn entropy_td(params: &ModelParams, lobes: LobeConvention) -> f64 {
    if params.lambda() == params.lambda_c() {
        return f64::INFINITY;
    }
    let solution = phase_solution(params);
    let single = gaussian_entropy(&rdm_params(&solution));
    match (solution.phase(), lobes) {
        (Phase::Superradiant, LobeConvention::TwoLobe) => single + 1.0,
        _ => single,
    }
}

/// Leading logarithmic behaviour of [`entropy_td`] for `|λ − λc|/λc < 0.01`:
///
/// ```text
/// S ≈ [1 − ½ ln(r·C) − ¼ ln|λ − λc|]/ln 2  (+1 bit for two lobes above λc),
/// C = 4(ω² + ω0²)√(8λcωω0)/(ωω0)²,  r = 1 below λc, √2 above.
/// ```
pub fn critical_asymptote(params: &ModelParams, lobes: LobeConvention) -> Result<f64> {
    let (w, w0, lc) = (params.omega(), params.omega0(), params.lambda_c());
    let delta = params.lambda() - lc;
    if !(delta.abs() / lc < 0.01) || delta == 0.0 {
        return Err(Error::Domain(format!(
            "critical asymptote valid for 0 < |λ − λc|/λc < 0.01, got {}",
            delta / lc
        )));
    }
    let base = 4.0 * (w * w + w0 * w0) * (8.0 * lc * w * w0).sqrt() / (w * w0).powi(2);
    let (scale, extra) = if delta < 0.0 {
        (1.0, 0.0)
    } else {
        (std::f64::consts::SQRT_2, if lobes == LobeConvention::TwoLobe { 1.0 } else { 0.0 })
    };
    Ok((1.0 - 0.5 * (scale * base).ln() - 0.25 * delta.abs().ln()) / LN_2 + extra)
}

/// Bipartite linear entropy `1 − Tr ρ²` (normal) or `1 − ½ Tr ρ₁²` (two
/// lobes, superradiant).
pub fn linear_entropy_td(params: &ModelParams) -> f64 {
    let solution = phase_solution(params);
    let purity = rdm_params(&solution).purity();
    match solution.phase() {
        Phase::Normal => 1.0 - purity,
        Phase::Superradiant => 1.0 - 0.5 * purity,
    }
}

/// Coordinate-space inverse participation ratio of the ground state.
///
/// Normal phase: `√(ε−ε+)/(2π)`. Superradiant: each lobe carries half the
/// weight, and the lobe Gaussian lives in the rescaled atomic coordinate, so
/// `P⁻¹ = ½ √(ω0/ω̃) √(ε−ε+)/(2π)`.
pub fn ipr_td(params: &ModelParams) -> f64 {
    match phase_solution(params) {
        PhaseSolution::Normal(n) => (n.eps_minus * n.eps_plus).sqrt() / TWO_PI,
        PhaseSolution::Superradiant(s) => 0.5 * s.atom_scale() * (s.eps_minus * s.eps_plus).sqrt() / TWO_PI,
    }
}

/// Average linear entropy: `0` for `λ ≤ λc`, `1 − μ²` above.
pub fn q_td(params: &ModelParams) -> f64 {
    match phase_of(params) {
        Phase::Normal => 0.0,
        Phase::Superradiant => 1.0 - (params.lambda_c() / params.lambda()).powi(4),
    }
}

/// `∂Q/∂λ`: `0` below `λc`, `4λc⁴/λ⁵` above (one-sided at `λc`).
pub fn dq_dlambda_td(params: &ModelParams) -> f64 {
    match phase_of(params) {
        Phase::Normal => 0.0,
        Phase::Superradiant => 4.0 * params.lambda_c().powi(4) / params.lambda().powi(5),
    }
}

/// Single-atom inversion `⟨J_z⟩/j`: `−1` below `λc`, `−μ` above.
pub fn inversion_td(params: &ModelParams) -> f64 {
    match phase_of(params) {
        Phase::Normal => -1.0,
        Phase::Superradiant => -(params.lambda_c() / params.lambda()).powi(2),
    }
}

/// Characteristic length `l− = ε−^{−1/2}`.
pub fn soft_mode_length(solution: &PhaseSolution) -> f64 {
    solution.eps_minus().sqrt().recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_params;

    fn resonant(ratio: f64) -> ModelParams {
        make_params(1.0, 1.0, 0.5 * ratio, 8).unwrap()
    }

    #[test]
    fn decoupled_energies_are_bare_frequencies() {
        let p = make_params(1.0, 3.0, 0.0, 4).unwrap();
        let n = normal_solution(&p).unwrap();
        assert!((n.eps_minus - 1.0).abs() < 1e-15 && (n.eps_plus - 3.0).abs() < 1e-15);
        assert_eq!(n.c, 1.0);
        let p = make_params(3.0, 1.0, 0.0, 4).unwrap();
        let n = normal_solution(&p).unwrap();
        assert!((n.eps_minus - 1.0).abs() < 1e-15 && (n.eps_plus - 3.0).abs() < 1e-15);
        assert!(n.c.abs() < 1e-15);
    }

    #[test]
    fn resonance_energies_and_angle() {
        for ratio in [0.2, 0.5, 0.9, 1.0] {
            let p = resonant(ratio);
            let n = normal_solution(&p).unwrap();
            let lambda = p.lambda();
            assert!((n.eps_minus.powi(2) - (1.0 - 2.0 * lambda)).abs() < 1e-14);
            assert!((n.eps_plus.powi(2) - (1.0 + 2.0 * lambda)).abs() < 1e-14);
            assert!((n.gamma1 - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        }
        assert_eq!(normal_solution(&resonant(1.0)).unwrap().eps_minus, 0.0);
    }

    #[test]
    fn wrong_phase_is_rejected() {
        assert!(matches!(normal_solution(&resonant(1.01)), Err(Error::PhaseDomain(_))));
        assert!(matches!(sr_solution(&resonant(0.99)), Err(Error::PhaseDomain(_))));
    }

    #[test]
    fn sr_substitution_values() {
        let s = sr_solution(&resonant(2.0)).unwrap();
        assert_eq!(s.mu, 0.25);
        assert!((s.omega_tilde - 2.5).abs() < 1e-15);
        let at_c = sr_solution(&resonant(1.0)).unwrap();
        assert_eq!((at_c.mu, at_c.alpha, at_c.beta_disp), (1.0, 0.0, 0.0));
    }

    #[test]
    fn q_values() {
        assert_eq!(q_td(&resonant(0.7)), 0.0);
        assert_eq!(q_td(&resonant(1.0)), 0.0);
        assert_eq!(q_td(&resonant(2.0)), 15.0 / 16.0);
    }

    #[test]
    fn pure_state_limit() {
        let r = rdm_params(&phase_solution(&resonant(0.0)));
        assert_eq!(r.d_coeff, 0.0);
        assert_eq!(r.purity(), 1.0);
        assert!((r.kappa - 1.0).abs() < 1e-15);
        assert_eq!(gaussian_entropy(&r), 0.0);
        let t = effective_temperature(&r, 1.0).unwrap();
        assert_eq!(t.temperature, 0.0);
    }

    #[test]
    fn critical_point_markers() {
        let p = resonant(1.0);
        assert_eq!(entropy_td(&p, LobeConvention::TwoLobe), f64::INFINITY);
        let r = rdm_params(&phase_solution(&p));
        assert!(r.divergent);
        assert_eq!(r.kappa, 0.0);
        assert_eq!(effective_temperature(&r, 1.0).unwrap().temperature, f64::INFINITY);
        assert_eq!(linear_entropy_td(&p), 1.0);
        assert_eq!(ipr_td(&p), 0.0);
    }

    #[test]
    fn asymptote_rejects_far_points() {
        assert!(critical_asymptote(&resonant(0.9), LobeConvention::TwoLobe).is_err());
        assert!(critical_asymptote(&resonant(1.0), LobeConvention::TwoLobe).is_err());
    }

    #[test]
    fn thermal_entropy_limits() {
        assert_eq!(thermal_entropy_bits(f64::INFINITY), 0.0);
        assert_eq!(thermal_entropy_bits(0.0), f64::INFINITY);
        // high temperature: S ≈ (1 − ln x)/ln 2
        let x = 1e-6;
        assert!((thermal_entropy_bits(x) - (1.0 - x.ln()) / LN_2).abs() < 1e-9);
    }
}
