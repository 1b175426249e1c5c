//! Numerical foundation: intervals, scalar functions, ODE integration,
//! quadrature, finite differences and zero finding.

mod diff;
mod ode;
mod quadrature;
mod roots;
mod spline;

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

pub use diff::{default_step, derivative, STEP_SCALE};
pub use ode::{integrate_ode, IntegratorConfig, Method, Trajectory};
pub use quadrature::{integrate, quadrature};
pub use roots::find_zeros;
pub use spline::{CubicSpline, QuinticHermite};

/// A closed interval `[lo, hi]` with finite endpoints and `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi)).ok()
    }

    /// `n` uniformly spaced points including both endpoints.
    pub fn linspace(&self, n: usize) -> Vec<f64> {
        linspace(self.lo, self.hi, n)
    }

    /// `n` logarithmically spaced points including both endpoints; needs `lo > 0`.
    pub fn logspace(&self, n: usize) -> Result<Vec<f64>> {
        if self.lo <= 0.0 {
            return Err(Error::param(format!(
                "log spacing needs a positive lower bound, got {}",
                self.lo
            )));
        }
        let (a, b) = (self.lo.ln(), self.hi.ln());
        let mut pts: Vec<f64> = linspace(a, b, n).into_iter().map(f64::exp).collect();
        // pin the endpoints so exp(ln(x)) round-off does not leak out of the interval
        if let Some(first) = pts.first_mut() {
            *first = self.lo;
        }
        if n > 1 {
            if let Some(last) = pts.last_mut() {
                *last = self.hi;
            }
        }
        Ok(pts)
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
                .collect()
        }
    }
}

type Evaluator = dyn Fn(f64) -> f64 + Send + Sync;

/// A real function of one real variable together with the interval on which
/// it is meant to be evaluated.
///
/// Cloning is cheap; the evaluator is shared.
#[derive(Clone)]
pub struct ScalarFunction {
    eval: Arc<Evaluator>,
    domain: Interval,
}

impl ScalarFunction {
    pub fn new<F>(domain: Interval, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        ScalarFunction {
            eval: Arc::new(f),
            domain,
        }
    }

    pub fn constant(domain: Interval, value: f64) -> Self {
        Self::new(domain, move |_| value)
    }

    #[inline]
    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Evaluates without checking the domain.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// Evaluates after checking that `x` lies in the domain and that the
    /// value is finite.
    pub fn try_eval(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::OutsideDomain {
                x,
                h: 0.0,
                lo: self.domain.lo,
                hi: self.domain.hi,
            });
        }
        let v = self.eval(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: x })
        }
    }

    /// Same evaluator on a sub-interval of the current domain.
    pub fn restrict(&self, domain: Interval) -> Result<Self> {
        if !self.domain.contains_interval(&domain) {
            return Err(Error::OutsideDomain {
                x: if domain.lo < self.domain.lo { domain.lo } else { domain.hi },
                h: 0.0,
                lo: self.domain.lo,
                hi: self.domain.hi,
            });
        }
        Ok(ScalarFunction {
            eval: Arc::clone(&self.eval),
            domain,
        })
    }

    /// Same evaluator with a new nominal domain, without a subset check.
    pub fn with_domain(&self, domain: Interval) -> Self {
        ScalarFunction {
            eval: Arc::clone(&self.eval),
            domain,
        }
    }

    /// Finite-difference derivative with the default step, shrunk as needed
    /// so the stencil stays inside the domain.
    pub fn diff(&self, x: f64, order: u8) -> Result<f64> {
        self.diff_with_step(x, order, default_step(x))
    }

    /// Like [`ScalarFunction::diff`] with a caller-chosen nominal step.
    pub fn diff_with_step(&self, x: f64, order: u8, step: f64) -> Result<f64> {
        let d = &self.domain;
        if !d.contains(x) {
            return Err(Error::OutsideDomain { x, h: 0.0, lo: d.lo, hi: d.hi });
        }
        let room = (x - d.lo).min(d.hi - x);
        let h = step.min(0.5 * room);
        if h <= 0.0 {
            return Err(Error::OutsideDomain { x, h, lo: d.lo, hi: d.hi });
        }
        derivative(self, x, order, h)
    }

    /// Pointwise combination on the intersection of the two domains.
    pub fn zip_with<F>(&self, other: &ScalarFunction, op: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        let domain = self.domain.intersect(&other.domain).ok_or(Error::InvalidInterval {
            lo: self.domain.lo.max(other.domain.lo),
            hi: self.domain.hi.min(other.domain.hi),
        })?;
        let (f, g) = (self.clone(), other.clone());
        Ok(Self::new(domain, move |x| op(f.eval(x), g.eval(x))))
    }
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}
