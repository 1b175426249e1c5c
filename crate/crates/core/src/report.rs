/// Residuals of one equation evaluated on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub tag: String,
    pub grid: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Largest `|residual|`; `+inf` if any residual is non-finite.
    pub max_abs: f64,
    pub rms: f64,
}

impl ResidualReport {
    /// # Panics
    /// If `grid` and `residuals` differ in length.
    pub fn new(tag: impl Into<String>, grid: Vec<f64>, residuals: Vec<f64>) -> Self {
        assert_eq!(grid.len(), residuals.len(), "one residual per grid point");
        let mut max_abs = 0.0f64;
        let mut sum_sq = 0.0;
        for r in &residuals {
            if r.is_finite() {
                max_abs = max_abs.max(r.abs());
                sum_sq += r * r;
            } else {
                max_abs = f64::INFINITY;
                sum_sq = f64::INFINITY;
            }
        }
        let rms = if residuals.is_empty() { 0.0 } else { (sum_sq / residuals.len() as f64).sqrt() };
        ResidualReport { tag: tag.into(), grid, residuals, max_abs, rms }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_abs < tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        let r = ResidualReport::new("x", vec![0.0, 1.0], vec![3.0, -4.0]);
        assert_eq!(r.max_abs, 4.0);
        assert!((r.rms - (12.5f64).sqrt()).abs() < 1e-15);
        assert!(r.passes(4.5));
        assert!(!r.passes(4.0));
    }

    #[test]
    fn non_finite_residual_fails() {
        let r = ResidualReport::new("x", vec![0.0, 1.0], vec![0.0, f64::NAN]);
        assert_eq!(r.max_abs, f64::INFINITY);
        assert!(!r.passes(1e300));
    }
}
