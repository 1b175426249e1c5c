use super::{CubicSpline, Interval, QuinticHermite, ScalarFunction};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Classical fourth-order Runge-Kutta with a fixed step (`initial_step`).
    FixedRk4,
    /// Dormand-Prince 5(4) with local error control.
    AdaptiveRk45,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub method: Method,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub initial_step: f64,
    pub max_steps: usize,
    /// Upper bound on the adaptive step. `None` means `span.width() / 64`,
    /// which keeps the spline interpolant of the trajectory accurate.
    pub max_step: Option<f64>,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            method: Method::AdaptiveRk45,
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            initial_step: 1e-3,
            max_steps: 1_000_000,
            max_step: None,
        }
    }
}

impl IntegratorConfig {
    pub fn fixed_rk4(step: f64) -> Self {
        IntegratorConfig {
            method: Method::FixedRk4,
            initial_step: step,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.abs_tol) || !positive(self.rel_tol) {
            return Err(Error::InvalidConfig("tolerances must be positive and finite"));
        }
        if !positive(self.initial_step) {
            return Err(Error::InvalidConfig("initial step must be positive and finite"));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidConfig("max_steps must be positive"));
        }
        if let Some(h) = self.max_step {
            if !positive(h) {
                return Err(Error::InvalidConfig("max_step must be positive and finite"));
            }
        }
        Ok(())
    }
}

/// Accepted integration steps: times, states and the right-hand side at each state.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<Vec<f64>>,
    derivatives: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[Vec<f64>] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().map_or(&[], Vec::as_slice)
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory always holds the initial point")
    }

    /// Component `i` as a clamped cubic spline through the accepted steps,
    /// with end slopes taken from the right-hand side.
    pub fn component(&self, i: usize) -> Result<ScalarFunction> {
        if i >= self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: i + 1 });
        }
        let ys: Vec<f64> = self.states.iter().map(|s| s[i]).collect();
        let d0 = self.derivatives[0][i];
        let dn = self.derivatives[self.len() - 1][i];
        let spline = CubicSpline::clamped(self.times.clone(), ys, d0, dn)?;
        let domain = Interval::new(self.times[0], self.final_time())?;
        Ok(ScalarFunction::new(domain, move |t| spline.eval(t)))
    }

    /// Position component of a second-order system written in first-order
    /// form, where state `velocity` is the derivative of state `position`.
    /// Interpolated with quintic Hermite pieces using the position, velocity
    /// and acceleration known at every accepted step.
    pub fn position(&self, position: usize, velocity: usize) -> Result<ScalarFunction> {
        let dim = self.dim();
        if position >= dim || velocity >= dim {
            return Err(Error::Dimension { expected: dim, got: position.max(velocity) + 1 });
        }
        if self.len() < 2 {
            return Err(Error::param("trajectory has a single point"));
        }
        let ys = self.states.iter().map(|s| s[position]).collect();
        let dys = self.states.iter().map(|s| s[velocity]).collect();
        let ddys = self.derivatives.iter().map(|d| d[velocity]).collect();
        let interp = QuinticHermite::new(self.times.clone(), ys, dys, ddys)?;
        let domain = Interval::new(self.times[0], self.final_time())?;
        Ok(ScalarFunction::new(domain, move |t| interp.eval(t)))
    }
}

/// Integrates `y' = rhs(t, y)` from `span.lo()` to `span.hi()`.
///
/// Any non-finite stage value aborts with [`Error::NonFinite`]; this is how
/// blow-ups and singularities surface.
pub fn integrate_ode<F>(rhs: F, y0: &[f64], span: Interval, cfg: &IntegratorConfig) -> Result<Trajectory>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    cfg.validate()?;
    if y0.is_empty() {
        return Err(Error::Dimension { expected: 1, got: 0 });
    }
    if y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { at: span.lo() });
    }
    let dim = y0.len();
    let eval = |t: f64, y: &[f64]| -> Result<Vec<f64>> {
        let d = rhs(t, y);
        if d.len() != dim {
            return Err(Error::Dimension { expected: dim, got: d.len() });
        }
        if d.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { at: t });
        }
        Ok(d)
    };
    match cfg.method {
        Method::FixedRk4 => rk4(&eval, y0, span, cfg),
        Method::AdaptiveRk45 => dopri5(&eval, y0, span, cfg),
    }
}

fn axpy(y: &[f64], h: f64, terms: &[(f64, &[f64])]) -> Vec<f64> {
    let mut out = y.to_vec();
    for (c, k) in terms {
        if *c != 0.0 {
            for (o, ki) in out.iter_mut().zip(k.iter()) {
                *o += h * c * ki;
            }
        }
    }
    out
}

fn finite_or_err(y: &[f64], t: f64) -> Result<()> {
    if y.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { at: t })
    }
}

fn rk4<E>(eval: &E, y0: &[f64], span: Interval, cfg: &IntegratorConfig) -> Result<Trajectory>
where
    E: Fn(f64, &[f64]) -> Result<Vec<f64>>,
{
    let steps_f = (span.width() / cfg.initial_step).ceil().max(1.0);
    if steps_f > cfg.max_steps as f64 {
        return Err(Error::StepLimit { max_steps: cfg.max_steps, t: span.lo(), target: span.hi() });
    }
    let steps = steps_f as usize;
    let h = span.width() / steps as f64;

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut derivatives = Vec::with_capacity(steps + 1);
    let mut y = y0.to_vec();
    let mut k1 = eval(span.lo(), &y)?;
    times.push(span.lo());
    states.push(y.clone());
    derivatives.push(k1.clone());

    for n in 0..steps {
        let t = span.lo() + n as f64 * h;
        let k2 = eval(t + 0.5 * h, &axpy(&y, h, &[(0.5, &k1)]))?;
        let k3 = eval(t + 0.5 * h, &axpy(&y, h, &[(0.5, &k2)]))?;
        let k4 = eval(t + h, &axpy(&y, h, &[(1.0, &k3)]))?;
        y = axpy(&y, h, &[(1.0 / 6.0, &k1), (1.0 / 3.0, &k2), (1.0 / 3.0, &k3), (1.0 / 6.0, &k4)]);
        let t_next = if n + 1 == steps { span.hi() } else { span.lo() + (n + 1) as f64 * h };
        finite_or_err(&y, t_next)?;
        k1 = eval(t_next, &y)?;
        times.push(t_next);
        states.push(y.clone());
        derivatives.push(k1.clone());
    }
    Ok(Trajectory { times, states, derivatives })
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B5: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
// fifth-order minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn dopri5<E>(eval: &E, y0: &[f64], span: Interval, cfg: &IntegratorConfig) -> Result<Trajectory>
where
    E: Fn(f64, &[f64]) -> Result<Vec<f64>>,
{
    let (t0, t_end) = (span.lo(), span.hi());
    let h_max = cfg.max_step.unwrap_or(span.width() / 64.0);
    let mut h = cfg.initial_step.min(h_max).min(span.width());

    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k1 = eval(t, &y)?;
    let mut times = vec![t];
    let mut states = vec![y.clone()];
    let mut derivatives = vec![k1.clone()];
    let mut attempts = 0usize;

    while t < t_end {
        if attempts >= cfg.max_steps {
            return Err(Error::StepLimit { max_steps: cfg.max_steps, t, target: t_end });
        }
        attempts += 1;

        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        if h <= f64::EPSILON * t.abs().max(1.0) * 4.0 {
            return Err(Error::StepUnderflow { t });
        }

        let k2 = eval(t + C[1] * h, &axpy(&y, h, &[(A2[0], &k1)]))?;
        let k3 = eval(t + C[2] * h, &axpy(&y, h, &[(A3[0], &k1), (A3[1], &k2)]))?;
        let k4 = eval(t + C[3] * h, &axpy(&y, h, &[(A4[0], &k1), (A4[1], &k2), (A4[2], &k3)]))?;
        let k5 = eval(
            t + C[4] * h,
            &axpy(&y, h, &[(A5[0], &k1), (A5[1], &k2), (A5[2], &k3), (A5[3], &k4)]),
        )?;
        let k6 = eval(
            t + C[5] * h,
            &axpy(&y, h, &[(A6[0], &k1), (A6[1], &k2), (A6[2], &k3), (A6[3], &k4), (A6[4], &k5)]),
        )?;
        let y_new = axpy(
            &y,
            h,
            &[(B5[0], &k1), (B5[2], &k3), (B5[3], &k4), (B5[4], &k5), (B5[5], &k6)],
        );
        let t_new = if last { t_end } else { t + h };
        finite_or_err(&y_new, t_new)?;
        let k7 = eval(t_new, &y_new)?;

        let mut err = 0.0f64;
        for i in 0..y.len() {
            let e = h
                * (E[0] * k1[i] + E[2] * k3[i] + E[3] * k4[i] + E[4] * k5[i] + E[5] * k6[i] + E[6] * k7[i]);
            let scale = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(y_new[i].abs());
            err = err.max((e / scale).abs());
        }

        if err <= 1.0 {
            t = t_new;
            y = y_new;
            k1 = k7;
            times.push(t);
            states.push(y.clone());
            derivatives.push(k1.clone());
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * factor).min(h_max);
    }

    Ok(Trajectory { times, states, derivatives })
}
