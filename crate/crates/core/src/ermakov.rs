//! Amplitude-phase ansatz and the Ermakov-Pinney equation `u³u'' = τ²`.
//!
//! Writing a solution of `χ'' = 0` as `χ = A + Bx = u exp(iτ ∫ dx/u²)` and
//! taking the logarithmic derivative gives the first-order complex equation
//!
//! ```text
//! u'/u + iτ/u² = B/(A + Bx)
//! ```
//!
//! whose imaginary part fixes `u² = τ |A + Bx|² / W` with
//! `W = Re(A) Im(B) - Im(A) Re(B)`. Its real part then holds automatically,
//! and differentiating once more recovers `u³u'' = τ²`. The right-hand side
//! `R = B/(A + Bx)` obeys `R' + R² = 0`.
//!
//! Complex quantities are returned as [`Complex64`]; every ODE state stays real.

use num_complex::Complex64;

use crate::numerics::{
    derivative, integrate, integrate_ode, IntegratorConfig, Interval, ScalarFunction, STEP_SCALE,
};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `π(x) ≡ τ` in the ansatz, giving `u³u'' = q` with `q = τ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpParams {
    tau: f64,
}

impl EpParams {
    pub fn new(tau: f64) -> Result<Self> {
        if tau != 0.0 && tau.is_finite() {
            Ok(EpParams { tau })
        } else {
            Err(Error::param(format!("τ must be finite and non-zero, got {tau}")))
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Coefficient of `u⁻³`.
    pub fn q(&self) -> f64 {
        self.tau * self.tau
    }
}

/// Integration constants `(A, B)` of `χ = A + Bx`.
///
/// Any pair is representable; the Pinney constructor enforces `W ≠ 0` and
/// `B ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub a: Complex64,
    pub b: Complex64,
}

impl ComplexPair {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        ComplexPair { a, b }
    }

    /// `W = a₁b₂ - a₂b₁`; non-zero exactly when `A/B` is not real.
    pub fn wronskian(&self) -> f64 {
        self.a.re * self.b.im - self.a.im * self.b.re
    }

    pub fn chi(&self, x: f64) -> Complex64 {
        self.a + self.b * x
    }

    /// `R(x) = B/(A + Bx)`.
    pub fn rhs(&self, x: f64) -> Complex64 {
        self.b / self.chi(x)
    }

    /// Smallest `|A + Bx|` over `x` in `domain`.
    pub fn min_modulus(&self, domain: Interval) -> f64 {
        let b2 = self.b.norm_sqr();
        if b2 == 0.0 {
            return self.a.norm();
        }
        let x_star = -(self.a * self.b.conj()).re / b2;
        self.chi(x_star.clamp(domain.lo(), domain.hi())).norm()
    }

    fn is_pole(&self, x: f64) -> bool {
        let scale = self.a.norm() + self.b.norm() * x.abs();
        self.chi(x).norm() <= 1e-12 * scale
    }

    fn check_pinney(&self, params: EpParams) -> Result<f64> {
        if self.b == Complex64::new(0.0, 0.0) {
            return Err(Error::param("B must be non-zero"));
        }
        let w = self.wronskian();
        if w == 0.0 {
            return Err(Error::param(format!("degenerate pair: W = 0 for A = {}, B = {}", self.a, self.b)));
        }
        let ratio = params.tau / w;
        if ratio <= 0.0 {
            return Err(Error::param(format!("τ/W must be positive, got τ = {}, W = {w}", params.tau)));
        }
        Ok(ratio.sqrt())
    }
}

/// A positive solution of `u³u'' = τ²` tied to the pair it came from.
#[derive(Debug, Clone)]
pub struct PinneySolution {
    pair: ComplexPair,
    params: EpParams,
    u: ScalarFunction,
}

impl PinneySolution {
    /// Pairs an arbitrary `u` with constants `(A, B)`, enforcing `B ≠ 0`,
    /// `W ≠ 0` and `τ/W > 0`. Use this to test candidate amplitudes against
    /// [`first_order_residual`].
    pub fn from_parts(pair: ComplexPair, params: EpParams, u: ScalarFunction) -> Result<Self> {
        pair.check_pinney(params)?;
        Ok(PinneySolution { pair, params, u })
    }

    pub fn pair(&self) -> ComplexPair {
        self.pair
    }

    pub fn params(&self) -> EpParams {
        self.params
    }

    pub fn u(&self) -> &ScalarFunction {
        &self.u
    }

    pub fn domain(&self) -> Interval {
        self.u.domain()
    }

    /// `u'` of the closed form, `sqrt(τ/W) Re(conj(A+Bx) B)/|A+Bx|`.
    pub fn closed_form_slope(&self, x: f64) -> Result<f64> {
        let scale = self.pair.check_pinney(self.params)?;
        let chi = self.pair.chi(x);
        Ok(scale * (chi.conj() * self.pair.b).re / chi.norm())
    }
}

/// `u(x) = sqrt(τ/W) |A + Bx|`.
pub fn pinney_closed_form(pair: ComplexPair, params: EpParams, domain: Interval) -> Result<PinneySolution> {
    let scale = pair.check_pinney(params)?;
    let floor = 1e-12 * (pair.a.norm() + pair.b.norm() * domain.lo().abs().max(domain.hi().abs()));
    if pair.min_modulus(domain) <= floor {
        let x = -(pair.a * pair.b.conj()).re / pair.b.norm_sqr();
        return Err(Error::Pole { x });
    }
    let u = ScalarFunction::new(domain, move |x| scale * pair.chi(x).norm());
    Ok(PinneySolution { pair, params, u })
}

/// `u'/u + iτ/u² - B/(A + Bx)` with `u'` by finite differences.
pub fn first_order_residual(sol: &PinneySolution, x: f64) -> Result<Complex64> {
    if sol.pair.is_pole(x) {
        return Err(Error::Pole { x });
    }
    let u = sol.u.try_eval(x)?;
    if u <= 0.0 {
        return Err(Error::Collapse { x });
    }
    let du = sol.u.diff(x, 1)?;
    Ok(Complex64::new(du / u, sol.params.tau / (u * u)) - sol.pair.rhs(x))
}

/// `u³u'' - τ²` with `u''` by finite differences.
pub fn second_order_residual(u: &ScalarFunction, params: EpParams, x: f64) -> Result<f64> {
    let value = u.try_eval(x)?;
    let d2 = u.diff(x, 2)?;
    Ok(value.powi(3) * d2 - params.q())
}

/// `R'(x) + R(x)²` for `R = B/(A + Bx)`, with `R'` by finite differences of
/// the real and imaginary parts. The step is scaled to the distance
/// `|A + Bx|/|B|` to the pole so that steep `R` is still resolved.
pub fn rhs_identity_residual(pair: ComplexPair, x: f64) -> Result<Complex64> {
    if pair.is_pole(x) {
        return Err(Error::Pole { x });
    }
    let pole_distance = if pair.b.norm() == 0.0 { f64::INFINITY } else { pair.chi(x).norm() / pair.b.norm() };
    let h = STEP_SCALE * x.abs().max(1.0).min(pole_distance);
    let stencil = Interval::new(x - 2.0 * h, x + 2.0 * h)?;
    let re = ScalarFunction::new(stencil, move |s| pair.rhs(s).re);
    let im = ScalarFunction::new(stencil, move |s| pair.rhs(s).im);
    let slope = Complex64::new(derivative(&re, x, 1, h)?, derivative(&im, x, 1, h)?);
    let r = pair.rhs(x);
    Ok(slope + r * r)
}

/// Left-hand side of the reduced ansatz equation
///
/// ```text
/// u'' + iπ'u^{1-λ} + i(2-λ)πu'u^{-λ} - π²u^{1-2λ}
/// ```
///
/// for `χ = u exp(i∫πu^{-λ})` to solve `χ'' = 0`.
#[derive(Debug, Clone)]
pub struct AnsatzSpec {
    u: ScalarFunction,
    pi_fn: ScalarFunction,
    lambda: f64,
}

impl AnsatzSpec {
    /// Checks `u > 0` on 201 samples of its domain.
    pub fn new(u: ScalarFunction, pi_fn: ScalarFunction, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::param("λ must be finite"));
        }
        for x in u.domain().linspace(201) {
            if !(u.try_eval(x)? > 0.0) {
                return Err(Error::Collapse { x });
            }
        }
        Ok(AnsatzSpec { u, pi_fn, lambda })
    }

    pub fn u(&self) -> &ScalarFunction {
        &self.u
    }

    pub fn pi_fn(&self) -> &ScalarFunction {
        &self.pi_fn
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

pub fn ansatz_residual(spec: &AnsatzSpec, x: f64) -> Result<Complex64> {
    let u = spec.u.try_eval(x)?;
    if u <= 0.0 {
        return Err(Error::Collapse { x });
    }
    let (du, d2u) = (spec.u.diff(x, 1)?, spec.u.diff(x, 2)?);
    let pi = spec.pi_fn.try_eval(x)?;
    let dpi = spec.pi_fn.diff(x, 1)?;
    let l = spec.lambda;
    let re = d2u - pi * pi * u.powf(1.0 - 2.0 * l);
    let im = dpi * u.powf(1.0 - l) + (2.0 - l) * pi * du * u.powf(-l);
    Ok(Complex64::new(re, im))
}

/// `χ(x) = u(x) exp(i ∫_{x0}^{x} π u^{-λ})`.
pub fn chi_from_ansatz(spec: &AnsatzSpec, x0: f64, x: f64) -> Result<Complex64> {
    let d = spec.u.domain();
    for p in [x0, x] {
        if !d.contains(p) || !spec.pi_fn.domain().contains(p) {
            return Err(Error::OutsideDomain { x: p, h: 0.0, lo: d.lo(), hi: d.hi() });
        }
    }
    let (u, pi, l) = (spec.u.clone(), spec.pi_fn.clone(), spec.lambda);
    let phase = integrate(|s| pi.eval(s) * u.eval(s).powf(-l), x0, x, 1e-13)?;
    Ok(spec.u.try_eval(x)? * (I * phase).exp())
}

/// Integrates `u'' = τ²/u³` from `u(lo) = u0`, `u'(lo) = du0` across `span`.
pub fn integrate_ep(
    params: EpParams,
    u0: f64,
    du0: f64,
    span: Interval,
    cfg: &IntegratorConfig,
) -> Result<ScalarFunction> {
    if !(u0 > 0.0) {
        return Err(Error::param(format!("initial amplitude must be positive, got {u0}")));
    }
    let q = params.q();
    let traj = integrate_ode(move |_, y| vec![y[1], q / (y[0] * y[0] * y[0])], &[u0, du0], span, cfg)?;
    if let Some((t, _)) = traj.times().iter().zip(traj.states()).find(|(_, s)| !(s[0] > 0.0)) {
        return Err(Error::Collapse { x: *t });
    }
    traj.position(0, 1)
}

/// Constants matching initial data at `x = 0`: `A = u0`, `B = du0 + iτ/u0`.
///
/// This normalisation makes `W = τ`, so `τ/W = 1` and the closed form
/// `|A + Bx|` passes through `(u0, du0)` at the origin.
pub fn matched_pair(params: EpParams, u0: f64, du0: f64) -> ComplexPair {
    ComplexPair::new(Complex64::new(u0, 0.0), Complex64::new(du0, params.tau / u0))
}

/// `u⁴ (F' + F²)` for `F = u'/u + iτ/u²`, with both `u'` and `F'` by finite
/// differences. Differentiating the first-order equation and eliminating
/// `(u'/u)²` with it leaves `u³u'' - τ²` in the real part and zero in the
/// imaginary part.
pub fn reduction_residual(sol: &PinneySolution, x: f64) -> Result<Complex64> {
    let u = sol.u.clone();
    let tau = sol.params.tau;
    let d = u.domain();
    let room = (x - d.lo()).min(d.hi() - x);
    // outer stencil plus the inner one used for u'
    let h = (STEP_SCALE * x.abs().max(1.0)).min(room / 4.0);
    if h <= 0.0 {
        return Err(Error::OutsideDomain { x, h, lo: d.lo(), hi: d.hi() });
    }
    let f_part = move |s: f64, imag: bool| -> f64 {
        let us = u.eval(s);
        if imag {
            tau / (us * us)
        } else {
            derivative(&u, s, 1, h).map_or(f64::NAN, |du| du / us)
        }
    };
    let inner = Interval::new(x - 2.0 * h, x + 2.0 * h)?;
    let fr = f_part.clone();
    let re = ScalarFunction::new(inner, move |s| fr(s, false));
    let im = ScalarFunction::new(inner, move |s| f_part(s, true));
    let f = Complex64::new(re.try_eval(x)?, im.try_eval(x)?);
    let df = Complex64::new(derivative(&re, x, 1, h / 2.0)?, derivative(&im, x, 1, h / 2.0)?);
    let u4 = sol.u.try_eval(x)?.powi(4);
    Ok(u4 * (df + f * f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn tau(t: f64) -> EpParams {
        EpParams::new(t).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(EpParams::new(0.0).is_err());
        assert!(EpParams::new(f64::NAN).is_err());
        assert_eq!(tau(-2.0).q(), 4.0);
    }

    #[test]
    fn unit_pair_gives_sqrt_one_plus_x2() {
        let sol = pinney_closed_form(ComplexPair::new(c(1.0, 0.0), c(0.0, 1.0)), tau(1.0), iv(-3.0, 3.0)).unwrap();
        for x in iv(-2.5, 2.5).linspace(21) {
            let u = sol.u().eval(x);
            assert!((u - (1.0 + x * x).sqrt()).abs() < 1e-15);
            // u³u'' = 1 = τ², both as a residual and by the hand formula u'' = 1/u³
            assert!(second_order_residual(sol.u(), sol.params(), x).unwrap().abs() < 1e-6);
            assert!((sol.u().diff(x, 2).unwrap() - u.powi(-3)).abs() < 1e-8);
        }
    }

    #[test]
    fn sign_symmetric_pair() {
        let pair = ComplexPair::new(c(0.0, 1.0), c(1.0, 0.0));
        assert_eq!(pair.wronskian(), -1.0);
        let sol = pinney_closed_form(pair, tau(-1.0), iv(-3.0, 3.0)).unwrap();
        for x in iv(-2.0, 2.0).linspace(9) {
            assert!((sol.u().eval(x) - (1.0 + x * x).sqrt()).abs() < 1e-15);
            assert!(second_order_residual(sol.u(), sol.params(), x).unwrap().abs() < 1e-6);
        }
    }

    #[test]
    fn degenerate_pairs_are_rejected() {
        let d = iv(-1.0, 1.0);
        assert!(pinney_closed_form(ComplexPair::new(c(1.0, 0.0), c(1.0, 0.0)), tau(1.0), d).is_err());
        assert!(pinney_closed_form(ComplexPair::new(c(1.0, 0.0), c(0.0, 0.0)), tau(1.0), d).is_err());
        // τ/W < 0
        assert!(pinney_closed_form(ComplexPair::new(c(1.0, 0.0), c(0.0, 1.0)), tau(-1.0), d).is_err());
        let flat = ScalarFunction::constant(d, 1.0);
        assert!(PinneySolution::from_parts(ComplexPair::new(c(1.0, 0.0), c(0.0, 0.0)), tau(1.0), flat).is_err());
    }

    #[test]
    fn first_order_residual_vanishes() {
        let sol = pinney_closed_form(ComplexPair::new(c(1.0, 0.0), c(0.0, 1.0)), tau(1.0), iv(-3.0, 3.0)).unwrap();
        // at x = 0: u'/u = 0, τ/u² = 1, B/A = i
        assert!(first_order_residual(&sol, 0.0).unwrap().norm() < 1e-7);
        // at x = 1: B/(A+B) = (1+i)/2, u'/u = 1/2, τ/u² = 1/2
        assert!((sol.pair().rhs(1.0) - c(0.5, 0.5)).norm() < 1e-15);
        assert!(first_order_residual(&sol, 1.0).unwrap().norm() < 1e-7);
    }

    #[test]
    fn second_order_residual_examples() {
        let d = iv(-2.0, 2.0);
        let u = ScalarFunction::new(d, |x: f64| (1.0 + x * x).sqrt());
        assert!(second_order_residual(&u, tau(1.0), 0.0).unwrap().abs() < 1e-6);
        assert!((second_order_residual(&u, tau(2.0), 0.0).unwrap() + 3.0).abs() < 1e-6);
        let line = ScalarFunction::new(d, |x| 1.0 + x);
        assert!((second_order_residual(&line, tau(1.0), 0.0).unwrap() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn rhs_identity_examples() {
        let r = rhs_identity_residual(ComplexPair::new(c(1.0, 0.0), c(0.0, 1.0)), 0.0).unwrap();
        assert!(r.norm() < 1e-8);
        let r = rhs_identity_residual(ComplexPair::new(c(1.0, 0.0), c(1.0, 0.0)), 2.0).unwrap();
        assert!(r.norm() < 1e-8);
        let err = rhs_identity_residual(ComplexPair::new(c(1.0, 0.0), c(-1.0, 0.0)), 1.0).unwrap_err();
        assert!(matches!(err, Error::Pole { .. }));
        // B = 0 makes R identically zero
        assert_eq!(rhs_identity_residual(ComplexPair::new(c(2.0, 1.0), c(0.0, 0.0)), 0.3).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn rhs_identity_close_to_real_pole() {
        let pair = ComplexPair::new(c(1.0, 0.0), c(-1.0, 0.0));
        for x in [0.9, 0.99, 1.01, 1.5] {
            assert!(rhs_identity_residual(pair, x).unwrap().norm() < 1e-8 * pair.rhs(x).norm_sqr().max(1.0));
        }
    }

    #[test]
    fn ansatz_examples() {
        let d = iv(-2.0, 2.0);
        let u = ScalarFunction::new(d, |x: f64| (1.0 + x * x).sqrt());
        let one = ScalarFunction::constant(d, 1.0);
        let spec = AnsatzSpec::new(u.clone(), one.clone(), 2.0).unwrap();
        let r = ansatz_residual(&spec, 0.0).unwrap();
        // λ = 2, π ≡ 1 reduces to the second-order residual divided by u³
        let oracle = second_order_residual(&u, tau(1.0), 0.0).unwrap() / u.eval(0.0).powi(3);
        assert!((r.re - oracle).abs() < 1e-9);
        assert!(r.norm() < 1e-6);

        let flat = AnsatzSpec::new(one.clone(), ScalarFunction::constant(d, 0.0), 2.0).unwrap();
        for x in [-1.0, 0.0, 0.7] {
            assert!(ansatz_residual(&flat, x).unwrap().norm() < 1e-12);
        }

        let ramp = AnsatzSpec::new(one, ScalarFunction::new(d, |x| x), 2.0).unwrap();
        assert!((ansatz_residual(&ramp, 0.0).unwrap() - c(0.0, 1.0)).norm() < 1e-9);
    }

    #[test]
    fn ansatz_requires_positive_amplitude() {
        let d = iv(-1.0, 1.0);
        let u = ScalarFunction::new(d, |x| x);
        assert!(AnsatzSpec::new(u, ScalarFunction::constant(d, 1.0), 2.0).is_err());
    }

    #[test]
    fn chi_of_pinney_amplitude_is_affine() {
        let d = iv(-3.0, 3.0);
        let u = ScalarFunction::new(d, |x: f64| (1.0 + x * x).sqrt());
        let spec = AnsatzSpec::new(u, ScalarFunction::constant(d, 1.0), 2.0).unwrap();
        for x in iv(-2.0, 2.0).linspace(17) {
            // √(1+x²) e^{i arctan x} = 1 + ix
            let chi = chi_from_ansatz(&spec, 0.0, x).unwrap();
            assert!((chi - c(1.0, x)).norm() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn chi_of_trivial_and_oscillating_ansatz() {
        let d = iv(-3.0, 3.0);
        let one = ScalarFunction::constant(d, 1.0);
        let still = AnsatzSpec::new(one.clone(), ScalarFunction::constant(d, 0.0), 2.0).unwrap();
        assert_eq!(chi_from_ansatz(&still, 0.0, 1.3).unwrap(), c(1.0, 0.0));

        let mu = 1.7;
        let wave = AnsatzSpec::new(one, ScalarFunction::constant(d, mu), 2.0).unwrap();
        let (x0, x) = (-0.5, 2.0);
        let expected = (I * mu * (x - x0)).exp();
        assert!((chi_from_ansatz(&wave, x0, x).unwrap() - expected).norm() < 1e-12);
        assert!(chi_from_ansatz(&wave, x0, 4.0).is_err());
    }

    #[test]
    fn integrated_amplitude_matches_closed_form() {
        let cfg = IntegratorConfig::default();
        let u = integrate_ep(tau(1.0), 1.0, 0.0, iv(0.0, 1.0), &cfg).unwrap();
        assert!((u.eval(1.0) - 2f64.sqrt()).abs() < 1e-6);
        let u = integrate_ep(tau(1.0), 1.0, 0.0, iv(0.0, 3.0), &cfg).unwrap();
        assert!((u.eval(3.0) - 10f64.sqrt()).abs() < 1e-6);

        // τ = 2, u0 = √2: A = √2, B = i√2
        let params = tau(2.0);
        let u0 = 2f64.sqrt();
        let pair = matched_pair(params, u0, 0.0);
        assert!((pair.b - c(0.0, 2f64.sqrt())).norm() < 1e-15);
        let closed = pinney_closed_form(pair, params, iv(0.0, 1.0)).unwrap();
        let numeric = integrate_ep(params, u0, 0.0, iv(0.0, 1.0), &cfg).unwrap();
        for x in iv(0.0, 1.0).linspace(11) {
            assert!((numeric.eval(x) - closed.u().eval(x)).abs() < 1e-6);
        }
    }

    #[test]
    fn integration_rejects_non_positive_start() {
        assert!(integrate_ep(tau(1.0), 0.0, 1.0, iv(0.0, 1.0), &IntegratorConfig::default()).is_err());
    }

    #[test]
    fn near_collision_bounce() {
        // the 1/u³ term repels: a steep approach turns around at u_min = |W|/|B|
        let params = tau(1e-2);
        let (u0, du0) = (1.0, -2.0);
        let span = iv(0.0, 1.0);
        let numeric = integrate_ep(params, u0, du0, span, &IntegratorConfig::default()).unwrap();
        let closed = pinney_closed_form(matched_pair(params, u0, du0), params, span).unwrap();
        let pair = closed.pair();
        let u_min = pair.wronskian().abs() / pair.b.norm();
        assert!((closed.u().eval(0.5) - u_min).abs() < 1e-4);
        for x in span.linspace(41) {
            let (n, e) = (numeric.eval(x), closed.u().eval(x));
            assert!(n > 0.0);
            assert!((n - e).abs() < 1e-5 * e.max(1e-2), "x = {x}: {n} vs {e}");
        }
    }

    #[test]
    fn matched_pair_reproduces_initial_data() {
        let params = tau(-0.7);
        let (u0, du0) = (1.3, -0.4);
        let pair = matched_pair(params, u0, du0);
        assert!((pair.wronskian() - params.tau()).abs() < 1e-15);
        let sol = pinney_closed_form(pair, params, iv(-1.0, 1.0)).unwrap();
        assert!((sol.u().eval(0.0) - u0).abs() < 1e-15);
        assert!((sol.closed_form_slope(0.0).unwrap() - du0).abs() < 1e-15);
    }

    #[test]
    fn first_order_reduction_recovers_second_order() {
        let pair = ComplexPair::new(c(0.4, -0.3), c(0.8, 0.5));
        let params = tau(pair.wronskian() * 1.5);
        let sol = pinney_closed_form(pair, params, iv(-1.0, 3.0)).unwrap();
        for x in iv(0.0, 2.0).linspace(11) {
            let r = reduction_residual(&sol, x).unwrap();
            assert!(r.norm() < 1e-5, "x = {x}: {r}");
        }
        // a non-solution shows up in the real part
        let wrong = PinneySolution::from_parts(pair, params, ScalarFunction::new(iv(-1.0, 3.0), |x| 1.0 + x * x)).unwrap();
        assert!(reduction_residual(&wrong, 1.0).unwrap().re.abs() > 1e-2);
    }
}
