use super::{Interval, ScalarFunction};
use crate::{Error, Result};

/// Zeros of `f` on `span` located by sign changes between `scan_points`
/// uniformly spaced samples and refined by bisection down to floating-point
/// resolution (well below `1e-12 * span.width()`).
///
/// Sign changes across a pole are rejected: a refined point is kept only if
/// `|f|` there is below `1e-9` times the largest sampled `|f|`.
pub fn find_zeros(f: &ScalarFunction, span: Interval, scan_points: usize) -> Result<Vec<f64>> {
    if scan_points < 2 {
        return Err(Error::param(format!("scan_points must be at least 2, got {scan_points}")));
    }
    let d = f.domain();
    if !d.contains_interval(&span) {
        return Err(Error::OutsideDomain { x: span.lo(), h: span.width(), lo: d.lo(), hi: d.hi() });
    }
    let xs = span.linspace(scan_points);
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
    let scale = ys.iter().filter(|v| v.is_finite()).fold(0.0f64, |m, v| m.max(v.abs()));
    let accept = |x: f64| f.eval(x).abs() <= 1e-9 * scale;

    let mut zeros: Vec<f64> = Vec::new();
    for i in 0..scan_points - 1 {
        let (a, b) = (xs[i], xs[i + 1]);
        let (fa, fb) = (ys[i], ys[i + 1]);
        if !(fa.is_finite() && fb.is_finite()) {
            continue;
        }
        if fa == 0.0 {
            if zeros.last() != Some(&a) {
                zeros.push(a);
            }
            continue;
        }
        if fb == 0.0 || fa.signum() == fb.signum() {
            continue;
        }
        let z = bisect(f, a, b, fa);
        if accept(z) {
            zeros.push(z);
        }
    }
    let last = xs[scan_points - 1];
    if ys[scan_points - 1] == 0.0 && zeros.last() != Some(&last) {
        zeros.push(last);
    }
    Ok(zeros)
}

fn bisect(f: &ScalarFunction, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f.eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    if f.eval(a).abs() <= f.eval(b).abs() {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_ode, IntegratorConfig};
    use std::f64::consts::PI;

    #[test]
    fn sine_zeros() {
        let f = ScalarFunction::new(Interval::new(0.0, 10.0).unwrap(), f64::sin);
        let z = find_zeros(&f, Interval::new(0.5, 7.0).unwrap(), 100).unwrap();
        assert_eq!(z.len(), 2);
        assert!((z[0] - PI).abs() < 1e-10);
        assert!((z[1] - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn no_sign_change() {
        let f = ScalarFunction::new(Interval::new(-1.0, 1.0).unwrap(), |x| x * x + 1.0);
        assert!(find_zeros(&f, Interval::new(-1.0, 1.0).unwrap(), 50).unwrap().is_empty());
    }

    #[test]
    fn zeros_of_integrated_oscillator() {
        // η'' + 4η = 0, η(0) = 0, η'(0) = 1 is sin(2x)/2
        let span = Interval::new(0.0, 3.3).unwrap();
        let tr = integrate_ode(|_, y| vec![y[1], -4.0 * y[0]], &[0.0, 1.0], span, &IntegratorConfig::default())
            .unwrap();
        let eta = tr.component(0).unwrap();
        let z = find_zeros(&eta, Interval::new(0.1, 3.3).unwrap(), 400).unwrap();
        assert_eq!(z.len(), 2);
        assert!((z[0] - PI / 2.0).abs() < 1e-7);
        assert!((z[1] - PI).abs() < 1e-7);
        assert!((z[1] - z[0] - PI / 2.0).abs() < 1e-7);
    }

    #[test]
    fn poles_are_not_zeros() {
        let f = ScalarFunction::new(Interval::new(1.0, 2.0).unwrap(), f64::tan);
        let z = find_zeros(&f, Interval::new(1.0, 2.0).unwrap(), 64).unwrap();
        assert!(z.is_empty(), "{z:?}");
    }

    #[test]
    fn exact_grid_zero_reported_once() {
        let f = ScalarFunction::new(Interval::new(-1.0, 1.0).unwrap(), |x| x);
        let z = find_zeros(&f, Interval::new(-1.0, 1.0).unwrap(), 3).unwrap();
        assert_eq!(z, vec![0.0]);
        assert!(find_zeros(&f, Interval::new(-1.0, 1.0).unwrap(), 1).is_err());
    }

    #[test]
    fn returned_points_are_near_zeros() {
        let f = ScalarFunction::new(Interval::new(0.0, 20.0).unwrap(), |x: f64| (x * x / 7.0).cos() * 3.0);
        let span = Interval::new(0.0, 20.0).unwrap();
        let z = find_zeros(&f, span, 2000).unwrap();
        assert!(!z.is_empty());
        assert!(z.windows(2).all(|w| w[0] < w[1]));
        for x in z {
            assert!(f.eval(x).abs() < 1e-9 * 3.0);
        }
    }
}
