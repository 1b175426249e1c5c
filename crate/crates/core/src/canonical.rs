//! Reduction of `u'' + P u' + Q u = 0` to the canonical form `χ'' + J χ = 0`
//! through `u = φ χ`, and comparison bounds on the spacing of zeros of `χ`.
//!
//! With `J = Q - P²/4 - P'/2` and `φ(x) = exp(-½ ∫ P)`, every solution of the
//! general equation is the product of the integrating factor with a solution
//! of the canonical one. If `ω² < J < Ω²` on an interval then adjacent zeros
//! of any canonical solution are between `π/Ω` and `π/ω` apart.

use std::f64::consts::PI;

use crate::numerics::{derivative, find_zeros, integrate, Interval, ScalarFunction};
use crate::report::ResidualReport;
use crate::{Error, Result};

/// Number of uniformly spaced samples used for the smoothness probe on `P`
/// and for the comparison-bound precondition on `J`.
pub const PROBE_POINTS: usize = 1001;

/// Zeros closer than this to either end of the span are dropped.
pub const ENDPOINT_EXCLUSION: f64 = 1e-9;

/// `u'' + P(x) u' + Q(x) u = 0` on `domain`.
#[derive(Debug, Clone)]
pub struct LinearOde2 {
    p: ScalarFunction,
    q: ScalarFunction,
    dp: Option<ScalarFunction>,
    domain: Interval,
}

impl LinearOde2 {
    /// Checks that `P` and `Q` are defined on `domain` and that `P` passes a
    /// continuous-differentiability probe: on [`PROBE_POINTS`] samples, `P'` is
    /// finite and no jump between neighbouring samples exceeds half of
    /// `max(1, max |P'|)`.
    pub fn new(p: ScalarFunction, q: ScalarFunction, domain: Interval) -> Result<Self> {
        for f in [&p, &q] {
            if !f.domain().contains_interval(&domain) {
                return Err(Error::OutsideDomain {
                    x: domain.lo(),
                    h: domain.width(),
                    lo: f.domain().lo(),
                    hi: f.domain().hi(),
                });
            }
        }
        let eq = LinearOde2 { p, q, dp: None, domain };
        eq.probe_smoothness()?;
        Ok(eq)
    }

    /// Supplies `P'` analytically instead of by finite differences.
    pub fn with_p_derivative(mut self, dp: ScalarFunction) -> Result<Self> {
        if !dp.domain().contains_interval(&self.domain) {
            return Err(Error::OutsideDomain {
                x: self.domain.lo(),
                h: self.domain.width(),
                lo: dp.domain().lo(),
                hi: dp.domain().hi(),
            });
        }
        self.dp = Some(dp);
        self.probe_smoothness()?;
        Ok(self)
    }

    pub fn p(&self) -> &ScalarFunction {
        &self.p
    }

    pub fn q(&self) -> &ScalarFunction {
        &self.q
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    fn p_prime(&self, x: f64) -> Result<f64> {
        match &self.dp {
            Some(dp) => dp.try_eval(x),
            None => self.p.diff(x, 1),
        }
    }

    fn probe_smoothness(&self) -> Result<()> {
        let grid = self.interior().linspace(PROBE_POINTS);
        let spacing = grid[1] - grid[0];
        let mut values = Vec::with_capacity(grid.len());
        for &x in &grid {
            let v = match &self.dp {
                Some(dp) => dp.try_eval(x)?,
                None => {
                    // stencil spans the sample spacing so a jump in P cannot hide between samples
                    let room = (x - self.p.domain().lo()).min(self.p.domain().hi() - x);
                    derivative(&self.p, x, 1, (0.25 * spacing).min(0.5 * room))?
                }
            };
            values.push(v);
        }
        let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let jump = values.windows(2).fold(0.0f64, |m, w| m.max((w[1] - w[0]).abs()));
        if jump > 0.5 * scale {
            return Err(Error::param(format!(
                "P is not continuously differentiable on [{}, {}]: P' jumps by {jump:e}",
                self.domain.lo(),
                self.domain.hi()
            )));
        }
        Ok(())
    }

    /// Domain on which `P'` is computable: the full domain when `P'` is
    /// supplied or `P` extends past both ends, otherwise pulled in slightly.
    fn interior(&self) -> Interval {
        let pd = self.p.domain();
        let pad = 1e-6 * self.domain.width();
        let lo = if self.dp.is_none() && pd.lo() >= self.domain.lo() { self.domain.lo() + pad } else { self.domain.lo() };
        let hi = if self.dp.is_none() && pd.hi() <= self.domain.hi() { self.domain.hi() - pad } else { self.domain.hi() };
        Interval::new(lo, hi).unwrap_or(self.domain)
    }

    /// `u''(x) + P(x) u'(x) + Q(x) u(x)` with finite-difference derivatives.
    pub fn residual(&self, u: &ScalarFunction, x: f64) -> Result<f64> {
        let d2 = u.diff(x, 2)?;
        let d1 = u.diff(x, 1)?;
        Ok(d2 + self.p.try_eval(x)? * d1 + self.q.try_eval(x)? * u.try_eval(x)?)
    }
}

/// Potential `J` and integrating factor `φ` of the canonical form.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    j: ScalarFunction,
    integrating_factor: ScalarFunction,
    domain: Interval,
}

impl CanonicalForm {
    pub fn j(&self) -> &ScalarFunction {
        &self.j
    }

    pub fn integrating_factor(&self) -> &ScalarFunction {
        &self.integrating_factor
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }
}

/// Builds `J = Q - P²/4 - P'/2` and `φ(x) = exp(-½ ∫_{lo}^{x} P)`, normalised
/// so that `φ(domain.lo) = 1`.
///
/// When `P'` is computed numerically and `P` is not defined past the ends of
/// the domain, `J` lives on the domain pulled in by `1e-6` of its width.
pub fn canonical_transform(eq: &LinearOde2) -> Result<CanonicalForm> {
    let domain = eq.interior();
    let x0 = eq.domain.lo();

    // fail early if P' cannot be evaluated anywhere on the grid
    for x in domain.linspace(PROBE_POINTS) {
        eq.p_prime(x)?;
    }

    let eq_j = eq.clone();
    let j = ScalarFunction::new(domain, move |x| {
        let p = eq_j.p.eval(x);
        match eq_j.p_prime(x) {
            Ok(dp) => eq_j.q.eval(x) - 0.25 * p * p - 0.5 * dp,
            Err(_) => f64::NAN,
        }
    });

    let p = eq.p.clone();
    let integrating_factor = ScalarFunction::new(eq.domain, move |x| {
        if x == x0 {
            return 1.0;
        }
        match integrate(|s| p.eval(s), x0, x, 1e-13) {
            Ok(area) => (-0.5 * area).exp(),
            Err(_) => f64::NAN,
        }
    });

    Ok(CanonicalForm { j, integrating_factor, domain })
}

/// `u = φ χ` on the common domain of the factor and `χ`.
pub fn reconstruct_solution(cf: &CanonicalForm, chi: &ScalarFunction) -> Result<ScalarFunction> {
    cf.integrating_factor.zip_with(chi, |phi, chi| phi * chi)
}

/// Comparison bounds `0 < ω < Ω` for `ω² < J < Ω²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SturmBounds {
    omega: f64,
    big_omega: f64,
}

impl SturmBounds {
    pub fn new(omega: f64, big_omega: f64) -> Result<Self> {
        if omega > 0.0 && omega < big_omega && big_omega.is_finite() {
            Ok(SturmBounds { omega, big_omega })
        } else {
            Err(Error::param(format!("comparison bounds need 0 < ω < Ω, got ω = {omega}, Ω = {big_omega}")))
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn big_omega(&self) -> f64 {
        self.big_omega
    }

    /// Smallest admissible gap, `π/Ω`.
    pub fn min_gap(&self) -> f64 {
        PI / self.big_omega
    }

    /// Largest admissible gap, `π/ω`.
    pub fn max_gap(&self) -> f64 {
        PI / self.omega
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapVerdict {
    Pass,
    Fail,
    /// Fewer than two interior zeros, so there is no gap to check.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub zeros: Vec<f64>,
    pub gaps: Vec<f64>,
    pub within: Vec<bool>,
    pub min_gap: f64,
    pub max_gap: f64,
    pub verdict: GapVerdict,
}

impl GapReport {
    /// One residual per gap: how far it falls outside `[π/Ω, π/ω]` (zero
    /// inside), reported at the left zero of the pair.
    pub fn to_residual_report(&self) -> ResidualReport {
        let residuals = self
            .gaps
            .iter()
            .map(|&g| (self.min_gap - g).max(g - self.max_gap).max(0.0))
            .collect();
        let grid = self.zeros.iter().take(self.gaps.len()).copied().collect();
        ResidualReport::new("zero_gap", grid, residuals)
    }
}

/// Checks that adjacent zeros of `chi` on `span` are between `π/Ω` and `π/ω`
/// apart, after verifying `ω² < J < Ω²` on [`PROBE_POINTS`] samples of `span`.
pub fn sturm_gap_check(
    j: &ScalarFunction,
    bounds: SturmBounds,
    chi: &ScalarFunction,
    span: Interval,
) -> Result<GapReport> {
    let (lower, upper) = (bounds.omega.powi(2), bounds.big_omega.powi(2));
    for x in span.linspace(PROBE_POINTS) {
        let value = j.try_eval(x)?;
        if !(lower < value && value < upper) {
            return Err(Error::BoundsViolated { x, value, lower, upper });
        }
    }

    // enough samples that no cell can hold two zeros
    let cells = (8.0 * span.width() / bounds.min_gap()).ceil() as usize;
    let scan = cells.max(PROBE_POINTS);
    let zeros: Vec<f64> = find_zeros(chi, span, scan)?
        .into_iter()
        .filter(|&z| z - span.lo() > ENDPOINT_EXCLUSION && span.hi() - z > ENDPOINT_EXCLUSION)
        .collect();

    let (min_gap, max_gap) = (bounds.min_gap(), bounds.max_gap());
    let gaps: Vec<f64> = zeros.windows(2).map(|w| w[1] - w[0]).collect();
    let within: Vec<bool> = gaps.iter().map(|&g| min_gap <= g && g <= max_gap).collect();
    let verdict = if gaps.is_empty() {
        GapVerdict::Inconclusive
    } else if within.iter().all(|&ok| ok) {
        GapVerdict::Pass
    } else {
        GapVerdict::Fail
    };
    Ok(GapReport { zeros, gaps, within, min_gap, max_gap, verdict })
}
