use crate::{Error, Result};

/// Clamped cubic spline: C² interpolant with prescribed end slopes.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    // second derivatives at the knots
    m: Vec<f64>,
}

impl CubicSpline {
    /// `xs` must be strictly increasing and match `ys` in length (at least 2).
    pub fn clamped(xs: Vec<f64>, ys: Vec<f64>, slope_lo: f64, slope_hi: f64) -> Result<Self> {
        let n = xs.len();
        if n < 2 || ys.len() != n {
            return Err(Error::param(format!(
                "spline needs at least two matching knots, got {} x and {} y",
                n,
                ys.len()
            )));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::param("spline knots must be strictly increasing"));
        }

        // tridiagonal system: sub[i] m[i-1] + diag[i] m[i] + sup[i] m[i+1] = rhs[i]
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let slope: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];

        diag[0] = 2.0 * h[0];
        sup[0] = h[0];
        rhs[0] = 6.0 * (slope[0] - slope_lo);
        for i in 1..n - 1 {
            sub[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            sup[i] = h[i];
            rhs[i] = 6.0 * (slope[i] - slope[i - 1]);
        }
        sub[n - 1] = h[n - 2];
        diag[n - 1] = 2.0 * h[n - 2];
        rhs[n - 1] = 6.0 * (slope_hi - slope[n - 2]);

        // Thomas algorithm; the matrix is strictly diagonally dominant
        for i in 1..n {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        }

        Ok(CubicSpline { xs, ys, m })
    }

    pub fn knots(&self) -> &[f64] {
        &self.xs
    }

    /// Evaluates the spline; outside the knot range the end cubic is extended.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.partition_point(|&k| k <= x) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let h = x1 - x0;
        let (a, b) = (x1 - x, x - x0);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        m0 * a * a * a / (6.0 * h)
            + m1 * b * b * b / (6.0 * h)
            + (self.ys[i] / h - m0 * h / 6.0) * a
            + (self.ys[i + 1] / h - m1 * h / 6.0) * b
    }
}

/// Piecewise quintic Hermite interpolant through values, first and second
/// derivatives at the knots. C² and sixth-order accurate.
#[derive(Debug, Clone)]
pub struct QuinticHermite {
    xs: Vec<f64>,
    ys: Vec<f64>,
    dys: Vec<f64>,
    ddys: Vec<f64>,
}

impl QuinticHermite {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, dys: Vec<f64>, ddys: Vec<f64>) -> Result<Self> {
        let n = xs.len();
        if n < 2 || ys.len() != n || dys.len() != n || ddys.len() != n {
            return Err(Error::param("quintic interpolant needs at least two knots with matching data"));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::param("interpolation knots must be strictly increasing"));
        }
        Ok(QuinticHermite { xs, ys, dys, ddys })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.partition_point(|&k| k <= x) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let s = (x - self.xs[i]) / h;
        let (s2, s3) = (s * s, s * s * s);
        let (s4, s5) = (s3 * s, s3 * s2);
        let h00 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
        let h10 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
        let h20 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
        let h01 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
        let h11 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
        let h21 = 0.5 * s3 - s4 + 0.5 * s5;
        h00 * self.ys[i]
            + h10 * h * self.dys[i]
            + h20 * h * h * self.ddys[i]
            + h01 * self.ys[i + 1]
            + h11 * h * self.dys[i + 1]
            + h21 * h * h * self.ddys[i + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_cubic_exactly() {
        let f = |x: f64| x * x * x - 2.0 * x + 1.0;
        let df = |x: f64| 3.0 * x * x - 2.0;
        let xs: Vec<f64> = (0..=10).map(|i| i as f64 * 0.3).collect();
        let ys = xs.iter().map(|&x| f(x)).collect();
        let s = CubicSpline::clamped(xs, ys, df(0.0), df(3.0)).unwrap();
        for k in 0..=60 {
            let x = k as f64 * 0.05;
            assert!((s.eval(x) - f(x)).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn interpolates_knots() {
        let xs = vec![0.0, 0.5, 2.0, 2.1];
        let ys = vec![1.0, -1.0, 3.0, 0.0];
        let s = CubicSpline::clamped(xs.clone(), ys.clone(), 0.0, 0.0).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            assert!((s.eval(*x) - y).abs() < 1e-12);
        }
    }

    #[test]
    fn quintic_reproduces_quintic() {
        let f = |x: f64| x.powi(5) - x * x + 3.0;
        let df = |x: f64| 5.0 * x.powi(4) - 2.0 * x;
        let ddf = |x: f64| 20.0 * x.powi(3) - 2.0;
        let xs = vec![-1.0, -0.2, 0.7, 1.5];
        let q = QuinticHermite::new(
            xs.clone(),
            xs.iter().map(|&x| f(x)).collect(),
            xs.iter().map(|&x| df(x)).collect(),
            xs.iter().map(|&x| ddf(x)).collect(),
        )
        .unwrap();
        for k in 0..=50 {
            let x = -1.0 + k as f64 * 0.05;
            assert!((q.eval(x) - f(x)).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn rejects_bad_knots() {
        assert!(CubicSpline::clamped(vec![0.0], vec![1.0], 0.0, 0.0).is_err());
        assert!(CubicSpline::clamped(vec![0.0, 0.0], vec![1.0, 2.0], 0.0, 0.0).is_err());
        assert!(CubicSpline::clamped(vec![0.0, 1.0], vec![1.0], 0.0, 0.0).is_err());
    }
}
