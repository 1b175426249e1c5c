//! Kasner background `g = -dt² + Σ t^{2p_k} dx_k²` with `Σp = 1`, `Σp² = 1`,
//! restricted to fields that depend on `t` only and, for covectors, have
//! only a time component.
//!
//! Signature is `(-,+,+,+)`, so `g⁰⁰ = -1`. The only Christoffel symbols
//! that act on such fields are `Γ⁰_kk = p_k t^{2p_k - 1}`, and the trace
//! `Σ g^{kk} Γ⁰_kk = Σ p_k / t` collapses to `1/t`.

use num_complex::Complex64;

use crate::numerics::{Interval, ScalarFunction, STEP_SCALE};
use crate::{Error, Result};

/// Constraint tolerance on `Σp = 1` and `Σp² = 1`.
pub const CONSTRAINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KasnerExponents {
    p: [f64; 3],
}

impl KasnerExponents {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        let e = KasnerExponents { p: [p1, p2, p3] };
        let (sum, sphere) = e.constraint_residuals();
        if sum.abs() < CONSTRAINT_TOL && sphere.abs() < CONSTRAINT_TOL {
            Ok(e)
        } else {
            Err(Error::param(format!(
                "({p1}, {p2}, {p3}) misses the Kasner constraints: Σp - 1 = {sum:e}, Σp² - 1 = {sphere:e}"
            )))
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.p
    }

    /// `(Σp - 1, Σp² - 1)`.
    pub fn constraint_residuals(&self) -> (f64, f64) {
        let [a, b, c] = self.p;
        (a + b + c - 1.0, a * a + b * b + c * c - 1.0)
    }

    /// `Γ⁰_kk = p_k t^{2p_k - 1}` for `k = 1, 2, 3`; `Γ⁰₀₀ = 0`.
    pub fn christoffel_t(&self, t: f64) -> Result<[f64; 3]> {
        check_time(t)?;
        Ok(self.p.map(|p| p * t.powf(2.0 * p - 1.0)))
    }

    /// `Σ_k g^{kk} Γ⁰_kk`, contracted term by term.
    pub fn spatial_trace(&self, t: f64) -> Result<f64> {
        let gamma = self.christoffel_t(t)?;
        Ok(self.p.iter().zip(gamma).map(|(p, g)| t.powf(-2.0 * p) * g).sum())
    }

    /// Divergence of a time-only covector through the explicit contraction
    /// `-ψ₀' + ψ₀ (Γ⁰₀₀ - Σ g^{kk} Γ⁰_kk)`.
    pub fn divergence(&self, form: &TimeOneForm, t: f64) -> Result<f64> {
        let trace = self.spatial_trace(t)?;
        Ok(-time_derivative(&form.comp0, t, 1)? - form.comp0.try_eval(t)? * trace)
    }

    /// `□f = g⁰⁰ f'' - Σ g^{kk} Γ⁰_kk f'` for `f = f(t)`.
    pub fn box_scalar(&self, f: &ScalarFunction, t: f64) -> Result<f64> {
        let trace = self.spatial_trace(t)?;
        Ok(-time_derivative(f, t, 2)? - trace * time_derivative(f, t, 1)?)
    }
}

/// Derivative in `t` with a step proportional to `t`. Fields on a Kasner
/// background vary on the scale of `t` itself, so a step fixed in absolute
/// terms is too coarse at small times. First derivatives get half the step
/// of second derivatives: they carry less roundoff and are nested inside
/// one another by the transport residual.
pub fn time_derivative(f: &ScalarFunction, t: f64, order: u8) -> Result<f64> {
    check_time(t)?;
    let scale = if order == 1 { 0.5 * STEP_SCALE } else { STEP_SCALE };
    f.diff_with_step(t, order, scale * t)
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("Kasner time must be positive, got {t}")))
    }
}

/// Both exponent triples with first exponent `p1`, i.e. the roots of
/// `z² - (1 - p1) z - p1 (1 - p1) = 0` assigned to `(p2, p3)` either way.
///
/// Real roots exist only for `p1 ∈ [-1/3, 1]`; the discriminant is
/// `(1 - p1)(1 + 3p1)`.
pub fn make_exponents(p1: f64) -> Result<[KasnerExponents; 2]> {
    let disc = (1.0 - p1) * (1.0 + 3.0 * p1);
    if !p1.is_finite() || disc < -CONSTRAINT_TOL {
        return Err(Error::param(format!(
            "p1 = {p1} is outside [-1/3, 1]: discriminant (1 - p1)(1 + 3 p1) = {disc} is negative"
        )));
    }
    let root = disc.max(0.0).sqrt();
    let hi = 0.5 * ((1.0 - p1) + root);
    let lo = 0.5 * ((1.0 - p1) - root);
    Ok([KasnerExponents::new(p1, hi, lo)?, KasnerExponents::new(p1, lo, hi)?])
}

/// `Γ⁰_kk` at time `t`.
pub fn christoffel_t(exps: &KasnerExponents, t: f64) -> Result<[f64; 3]> {
    exps.christoffel_t(t)
}

fn check_form_domain(domain: Interval) -> Result<()> {
    if domain.lo() > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("time domain must exclude t <= 0, got lower bound {}", domain.lo())))
    }
}

/// Covector `ψ = ψ₀(t) dt`.
#[derive(Debug, Clone)]
pub struct TimeOneForm {
    comp0: ScalarFunction,
}

impl TimeOneForm {
    pub fn new(comp0: ScalarFunction) -> Result<Self> {
        check_form_domain(comp0.domain())?;
        Ok(TimeOneForm { comp0 })
    }

    pub fn comp0(&self) -> &ScalarFunction {
        &self.comp0
    }

    pub fn domain(&self) -> Interval {
        self.comp0.domain()
    }
}

/// Complex covector `ρ = (β₁(t) + iβ₂(t)) dt`.
#[derive(Debug, Clone)]
pub struct ComplexTimeOneForm {
    beta1: ScalarFunction,
    beta2: ScalarFunction,
}

impl ComplexTimeOneForm {
    pub fn new(beta1: ScalarFunction, beta2: ScalarFunction) -> Result<Self> {
        check_form_domain(beta1.domain())?;
        check_form_domain(beta2.domain())?;
        if beta1.domain().intersect(&beta2.domain()).is_none() {
            return Err(Error::param("β₁ and β₂ have disjoint domains"));
        }
        Ok(ComplexTimeOneForm { beta1, beta2 })
    }

    pub fn beta1(&self) -> &ScalarFunction {
        &self.beta1
    }

    pub fn beta2(&self) -> &ScalarFunction {
        &self.beta2
    }

    pub fn domain(&self) -> Interval {
        self.beta1
            .domain()
            .intersect(&self.beta2.domain())
            .expect("checked on construction")
    }

    pub fn rho0(&self, t: f64) -> Complex64 {
        Complex64::new(self.beta1.eval(t), self.beta2.eval(t))
    }
}

/// `div ψ = -ψ₀' - ψ₀/t`.
pub fn divergence(form: &TimeOneForm, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(-time_derivative(&form.comp0, t, 1)? - form.comp0.try_eval(t)? / t)
}

/// `div ρ + g⁰⁰ ρ₀² = -ρ₀' - ρ₀/t - ρ₀²`. Real and imaginary parts are the
/// residuals of the coupled `(β₁, β₂)` system.
pub fn rho_residual(form: &ComplexTimeOneForm, t: f64) -> Result<Complex64> {
    check_time(t)?;
    let rho = Complex64::new(form.beta1.try_eval(t)?, form.beta2.try_eval(t)?);
    let slope = Complex64::new(time_derivative(&form.beta1, t, 1)?, time_derivative(&form.beta2, t, 1)?);
    Ok(-slope - rho / t - rho * rho)
}

/// `□f = -(f'' + f'/t)` for a function of `t` alone.
pub fn box_scalar(f: &ScalarFunction, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(-(time_derivative(f, t, 2)? + time_derivative(f, t, 1)? / t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn form(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> TimeOneForm {
        TimeOneForm::new(ScalarFunction::new(iv(1e-3, 1e3), f)).unwrap()
    }

    #[test]
    fn exponent_examples() {
        let [a, b] = make_exponents(1.0).unwrap();
        assert_eq!(a.as_array(), [1.0, 0.0, 0.0]);
        assert_eq!(b.as_array(), [1.0, 0.0, 0.0]);

        let [a, b] = make_exponents(0.0).unwrap();
        assert_eq!(a.as_array(), [0.0, 1.0, 0.0]);
        assert_eq!(b.as_array(), [0.0, 0.0, 1.0]);

        let [a, _] = make_exponents(-1.0 / 3.0).unwrap();
        let [p1, p2, p3] = a.as_array();
        assert!((p1 + 1.0 / 3.0).abs() < 1e-15);
        assert!((p2 - 2.0 / 3.0).abs() < 1e-7);
        assert!((p3 - 2.0 / 3.0).abs() < 1e-7);
    }

    #[test]
    fn exponents_outside_range_error() {
        for p1 in [2.0, -0.5, 1.0 + 1e-6, f64::NAN] {
            assert!(make_exponents(p1).is_err(), "p1 = {p1}");
        }
        assert!(KasnerExponents::new(0.5, 0.5, 0.0).is_err());
    }

    #[test]
    fn christoffel_examples() {
        let axis = KasnerExponents::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(christoffel_t(&axis, 2.0).unwrap(), [2.0, 0.0, 0.0]);
        assert_eq!(christoffel_t(&axis, 1.0).unwrap(), [1.0, 0.0, 0.0]);
        let [sym, _] = make_exponents(-1.0 / 3.0).unwrap();
        let g = christoffel_t(&sym, 1.0).unwrap();
        for (gk, pk) in g.iter().zip(sym.as_array()) {
            assert!((gk - pk).abs() < 1e-15);
        }
        assert!(christoffel_t(&axis, 0.0).is_err());
        assert!(christoffel_t(&axis, -1.0).is_err());
    }

    #[test]
    fn divergence_examples() {
        assert!(divergence(&form(|t| 3.0 / t), 2.0).unwrap().abs() < 1e-8);
        assert!((divergence(&form(|_| 1.0), 2.0).unwrap() + 0.5).abs() < 1e-12);
        assert!((divergence(&form(|t| t), 5.0).unwrap() + 2.0).abs() < 1e-8);
    }

    #[test]
    fn rho_residual_examples() {
        let d = iv(1e-3, 1e3);
        let zero = ComplexTimeOneForm::new(ScalarFunction::constant(d, 0.0), ScalarFunction::constant(d, 0.0)).unwrap();
        assert_eq!(rho_residual(&zero, 3.0).unwrap(), Complex64::new(0.0, 0.0));

        let inv = ComplexTimeOneForm::new(ScalarFunction::new(d, |t| 1.0 / t), ScalarFunction::constant(d, 0.0)).unwrap();
        let r = rho_residual(&inv, 2.0).unwrap();
        assert!((r.re + 0.25).abs() < 1e-9);
        assert!(r.im.abs() < 1e-15);
    }

    #[test]
    fn box_examples() {
        let d = iv(1e-3, 1e3);
        assert_eq!(box_scalar(&ScalarFunction::constant(d, 1.0), 2.0).unwrap(), 0.0);
        assert!(box_scalar(&ScalarFunction::new(d, f64::ln), 3.0).unwrap().abs() < 1e-8);
        assert!((box_scalar(&ScalarFunction::new(d, |t| t * t), 2.0).unwrap() + 4.0).abs() < 1e-8);
    }

    #[test]
    fn forms_reject_non_positive_times() {
        let d = iv(-1.0, 1.0);
        assert!(TimeOneForm::new(ScalarFunction::constant(d, 1.0)).is_err());
        assert!(ComplexTimeOneForm::new(ScalarFunction::constant(d, 1.0), ScalarFunction::constant(d, 1.0)).is_err());
    }

    #[test]
    fn contraction_matches_collapsed_trace() {
        let psi = form(|t| t.sin() + 2.0 / t);
        let f = ScalarFunction::new(iv(1e-3, 1e3), |t: f64| t.powf(1.5) + t.ln());
        for exps in [KasnerExponents::new(1.0, 0.0, 0.0).unwrap(), make_exponents(-1.0 / 3.0).unwrap()[0]] {
            for t in [0.5, 1.0, 3.7, 40.0] {
                assert!((exps.spatial_trace(t).unwrap() - 1.0 / t).abs() < 1e-14 / t);
                let a = exps.divergence(&psi, t).unwrap();
                let b = divergence(&psi, t).unwrap();
                assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
                let a = exps.box_scalar(&f, t).unwrap();
                let b = box_scalar(&f, t).unwrap();
                assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
            }
        }
    }
}
