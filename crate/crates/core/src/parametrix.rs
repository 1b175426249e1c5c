//! Amplitude and phase of the wave-equation parametrix in Kasner spacetime.
//!
//! Everything is driven by four numbers: the divergence-free covector
//! `ψ = (κ/t) dt`, the parameter `σ > 0` of the linearised ρ-equation, the
//! reference time `T`, and the phase offset `φ(T)`. With
//! `D_σ(t) = κ²/σ + σ log²(t/T)` the closed forms are
//!
//! ```text
//! α   = sqrt(D_σ)
//! φ   = φ(T) + arctan((σ/κ) log(t/T))
//! β₁  = (σ/t) log(t/T) / D_σ
//! β₂  = (κ/t) / D_σ
//! ```
//!
//! [`verify_recipe`] checks all defining equations as residuals on a grid,
//! using finite differences and the operators of [`crate::kasner`].

use num_complex::Complex64;

use crate::kasner::{self, time_derivative, ComplexTimeOneForm, TimeOneForm};
use crate::numerics::{integrate_ode, IntegratorConfig, Interval, ScalarFunction};
use crate::report::ResidualReport;
use crate::{Error, Result};

/// Residual tags, one per defining equation, in report order.
pub const TRANSPORT: &str = "transport";
pub const EIKONAL: &str = "eikonal";
pub const PSI_DIVERGENCE: &str = "psi_divergence";
pub const AMPLITUDE_NONLINEAR: &str = "amplitude_nonlinear";
pub const PHASE_GRADIENT: &str = "phase_gradient";
pub const FIRST_ORDER_AMPLITUDE: &str = "first_order_amplitude";
pub const RHO_RICCATI: &str = "rho_riccati";

pub const RECIPE_TAGS: [&str; 7] = [
    TRANSPORT,
    EIKONAL,
    PSI_DIVERGENCE,
    AMPLITUDE_NONLINEAR,
    PHASE_GRADIENT,
    FIRST_ORDER_AMPLITUDE,
    RHO_RICCATI,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParametrixParams {
    kappa: f64,
    sigma: f64,
    t_ref: f64,
    phase_ref: f64,
}

impl ParametrixParams {
    pub fn new(kappa: f64, sigma: f64, t_ref: f64, phase_ref: f64) -> Result<Self> {
        if !(kappa != 0.0 && kappa.is_finite()) {
            return Err(Error::param(format!("kappa must be nonzero and finite, got {kappa}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::param(format!("sigma must be positive, got {sigma}")));
        }
        if !(t_ref > 0.0 && t_ref.is_finite()) {
            return Err(Error::param(format!("reference time T must be positive, got {t_ref}")));
        }
        if !phase_ref.is_finite() {
            return Err(Error::param(format!("phase offset must be finite, got {phase_ref}")));
        }
        Ok(ParametrixParams { kappa, sigma, t_ref, phase_ref })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn t_ref(&self) -> f64 {
        self.t_ref
    }

    pub fn phase_ref(&self) -> f64 {
        self.phase_ref
    }

    /// `D_σ(t) = κ²/σ + σ log²(t/T)`.
    pub fn d_sigma(&self, t: f64) -> f64 {
        let l = (t / self.t_ref).ln();
        self.kappa * self.kappa / self.sigma + self.sigma * l * l
    }

    /// Domain on which the closed forms are handed out: `[T/1000, 10⁴ T]`.
    /// Wide enough that any grid over `[T, 1000 T]` stays well inside it.
    pub fn domain(&self) -> Interval {
        Interval::new(1e-3 * self.t_ref, 1e4 * self.t_ref).expect("T > 0")
    }
}

/// `ψ₀ = κ/t`.
pub fn psi_kasner(params: &ParametrixParams) -> TimeOneForm {
    let k = params.kappa;
    TimeOneForm::new(ScalarFunction::new(params.domain(), move |t| k / t)).expect("domain starts above 0")
}

/// `B(t) = (σ/κ) log(t/T)`, the solution of `B'' + B'/t = 0` with `B(T) = 0`.
pub fn b_function(params: &ParametrixParams) -> ScalarFunction {
    let (r, t_ref) = (params.sigma / params.kappa, params.t_ref);
    ScalarFunction::new(params.domain(), move |t| r * (t / t_ref).ln())
}

pub fn beta_closed_form(params: &ParametrixParams) -> ComplexTimeOneForm {
    let p = *params;
    let beta1 = ScalarFunction::new(p.domain(), move |t| p.sigma / t * (t / p.t_ref).ln() / p.d_sigma(t));
    let beta2 = ScalarFunction::new(p.domain(), move |t| p.kappa / t / p.d_sigma(t));
    ComplexTimeOneForm::new(beta1, beta2).expect("domain starts above 0")
}

/// `ρ₀ = (σ log(t/T) + iκ) / (t D_σ)`, evaluated as one complex quotient.
pub fn rho_components(params: &ParametrixParams) -> ComplexTimeOneForm {
    let p = *params;
    let rho = move |t: f64| Complex64::new(p.sigma * (t / p.t_ref).ln(), p.kappa) / (t * p.d_sigma(t));
    ComplexTimeOneForm::new(
        ScalarFunction::new(p.domain(), move |t| rho(t).re),
        ScalarFunction::new(p.domain(), move |t| rho(t).im),
    )
    .expect("domain starts above 0")
}

/// Right-hand side of `ρ₀' = -ρ₀/t - ρ₀²` split into real and imaginary parts.
fn beta_rhs(t: f64, y: &[f64]) -> Vec<f64> {
    let (b1, b2) = (y[0], y[1]);
    vec![-b1 / t - b1 * b1 + b2 * b2, -b2 / t - 2.0 * b1 * b2]
}

/// Integrates the β-system from `span.lo() = T` with the closed-form data
/// `β₁(T) = 0`, `β₂(T) = σ/(κT)`.
pub fn integrate_beta_system(
    params: &ParametrixParams,
    span: Interval,
    cfg: &IntegratorConfig,
) -> Result<ComplexTimeOneForm> {
    let t_ref = params.t_ref;
    if (span.lo() - t_ref).abs() > 1e-12 * t_ref {
        return Err(Error::param(format!(
            "β-system starts at the reference time T = {t_ref}, got span starting at {}",
            span.lo()
        )));
    }
    let start = Complex64::new(0.0, params.sigma / (params.kappa * t_ref));
    integrate_beta_from(start, span, cfg)
}

/// Integrates the β-system from arbitrary data `ρ₀(span.lo())`.
///
/// Solutions vary on the scale `t`, so the step is capped at
/// `span.lo() / 64` on top of any cap in `cfg`; this keeps the cubic
/// interpolant between steps well below `1e-6` in error.
pub fn integrate_beta_from(start: Complex64, span: Interval, cfg: &IntegratorConfig) -> Result<ComplexTimeOneForm> {
    if !(span.lo() > 0.0) {
        return Err(Error::param(format!("β-system needs t > 0, got span starting at {}", span.lo())));
    }
    let cap = span.lo() / 64.0;
    let cfg = IntegratorConfig {
        max_step: Some(cfg.max_step.map_or(cap, |h| h.min(cap))),
        ..*cfg
    };
    let traj = integrate_ode(beta_rhs, &[start.re, start.im], span, &cfg)?;
    ComplexTimeOneForm::new(traj.component(0)?, traj.component(1)?)
}

pub fn amplitude(params: &ParametrixParams) -> ScalarFunction {
    let p = *params;
    ScalarFunction::new(p.domain(), move |t| p.d_sigma(t).sqrt())
}

pub fn phase(params: &ParametrixParams) -> ScalarFunction {
    let p = *params;
    ScalarFunction::new(p.domain(), move |t| {
        p.phase_ref + (p.sigma / p.kappa * (t / p.t_ref).ln()).atan()
    })
}

#[derive(Debug, Clone)]
pub struct AmplitudePhase {
    alpha: ScalarFunction,
    phi: ScalarFunction,
    domain: Interval,
}

impl AmplitudePhase {
    pub fn new(alpha: ScalarFunction, phi: ScalarFunction) -> Result<Self> {
        let domain = alpha
            .domain()
            .intersect(&phi.domain())
            .ok_or_else(|| Error::param("amplitude and phase have disjoint domains"))?;
        Ok(AmplitudePhase { alpha, phi, domain })
    }

    pub fn closed_form(params: &ParametrixParams) -> Self {
        AmplitudePhase::new(amplitude(params), phase(params)).expect("same domain")
    }

    pub fn alpha(&self) -> &ScalarFunction {
        &self.alpha
    }

    pub fn phi(&self) -> &ScalarFunction {
        &self.phi
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }
}

/// `q = ψ_γ ψ^γ = g⁰⁰ ψ₀² = -ψ₀²`, the coefficient that turns the amplitude
/// equation into `α³ □α = q`.
pub fn q_coefficient(psi: &TimeOneForm, t: f64) -> Result<f64> {
    let p = psi.comp0().try_eval(t)?;
    Ok(-p * p)
}

/// The fields a recipe check runs on. Start from [`RecipeFields::closed_form`]
/// and swap single fields to build negative controls.
#[derive(Debug, Clone)]
pub struct RecipeFields {
    pub psi: TimeOneForm,
    pub alpha: ScalarFunction,
    pub phi: ScalarFunction,
    pub rho: ComplexTimeOneForm,
}

impl RecipeFields {
    pub fn closed_form(params: &ParametrixParams) -> Self {
        RecipeFields {
            psi: psi_kasner(params),
            alpha: amplitude(params),
            phi: phase(params),
            rho: beta_closed_form(params),
        }
    }

    pub fn with_psi(self, psi: TimeOneForm) -> Self {
        RecipeFields { psi, ..self }
    }

    pub fn with_alpha(self, alpha: ScalarFunction) -> Self {
        RecipeFields { alpha, ..self }
    }

    pub fn with_phi(self, phi: ScalarFunction) -> Self {
        RecipeFields { phi, ..self }
    }

    pub fn with_rho(self, rho: ComplexTimeOneForm) -> Self {
        RecipeFields { rho, ..self }
    }

    fn domain(&self) -> Option<Interval> {
        self.psi
            .domain()
            .intersect(&self.alpha.domain())?
            .intersect(&self.phi.domain())?
            .intersect(&self.rho.domain())
    }
}

/// Residuals of the recipe equations for the closed-form fields.
pub fn verify_recipe(params: &ParametrixParams, grid: &[f64]) -> Result<Vec<ResidualReport>> {
    verify_fields(&RecipeFields::closed_form(params), grid)
}

/// One report per tag in [`RECIPE_TAGS`], residuals in grid order:
///
/// * transport: `div((α² φ') dt)`
/// * eikonal: `-(φ')² - □α/α`
/// * psi_divergence: `div ψ`
/// * amplitude_nonlinear: `α³ □α + ψ₀²`
/// * phase_gradient: `φ' - ψ₀/α²`
/// * first_order_amplitude: `|(log α)' + iψ₀/α² - ρ₀|`
/// * rho_riccati: `|div ρ - ρ₀²|`
pub fn verify_fields(fields: &RecipeFields, grid: &[f64]) -> Result<Vec<ResidualReport>> {
    let domain = fields.domain().ok_or_else(|| Error::param("recipe fields have disjoint domains"))?;
    if grid.is_empty() {
        return Err(Error::param("residual grid is empty"));
    }
    if let Some(&t) = grid.iter().find(|&&t| !(t > 0.0 && domain.contains(t))) {
        return Err(Error::OutsideDomain { x: t, h: 0.0, lo: domain.lo(), hi: domain.hi() });
    }

    let flux = {
        let (alpha, phi) = (fields.alpha.clone(), fields.phi.clone());
        ScalarFunction::new(domain, move |t| {
            let a = alpha.eval(t);
            a * a * time_derivative(&phi, t, 1).unwrap_or(f64::NAN)
        })
    };
    let flux = TimeOneForm::new(flux)?;

    let mut rows = vec![Vec::with_capacity(grid.len()); RECIPE_TAGS.len()];
    for &t in grid {
        let a = fields.alpha.try_eval(t)?;
        let box_a = kasner::box_scalar(&fields.alpha, t)?;
        let dphi = time_derivative(&fields.phi, t, 1)?;
        let psi0 = fields.psi.comp0().try_eval(t)?;
        let dlog_a = time_derivative(&fields.alpha, t, 1)? / a;
        let rho0 = Complex64::new(fields.rho.beta1().try_eval(t)?, fields.rho.beta2().try_eval(t)?);

        let values = [
            kasner::divergence(&flux, t)?,
            -dphi * dphi - box_a / a,
            kasner::divergence(&fields.psi, t)?,
            a * a * a * box_a - q_coefficient(&fields.psi, t)?,
            dphi - psi0 / (a * a),
            (Complex64::new(dlog_a, psi0 / (a * a)) - rho0).norm(),
            kasner::rho_residual(&fields.rho, t)?.norm(),
        ];
        for (row, v) in rows.iter_mut().zip(values) {
            row.push(v);
        }
    }
    Ok(RECIPE_TAGS
        .iter()
        .zip(rows)
        .map(|(tag, r)| ResidualReport::new(*tag, grid.to_vec(), r))
        .collect())
}
