use super::ScalarFunction;
use crate::{Error, Result};

/// Relative step used by [`default_step`].
pub const STEP_SCALE: f64 = 1e-3;

/// Default finite-difference step at `x`: `STEP_SCALE * max(|x|, 1)`.
#[inline]
pub fn default_step(x: f64) -> f64 {
    STEP_SCALE * x.abs().max(1.0)
}

/// Central finite difference of order 1 or 2 at `x`, Richardson-extrapolated
/// from steps `2h` and `h`. The truncation error is `O(h⁴)`.
///
/// The whole stencil `[x - 2h, x + 2h]` must lie inside the function's domain.
pub fn derivative(f: &ScalarFunction, x: f64, order: u8, h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::param(format!("finite-difference step must be positive, got {h}")));
    }
    let d = f.domain();
    if order != 1 && order != 2 {
        return Err(Error::param(format!("derivative order must be 1 or 2, got {order}")));
    }
    if !(d.contains(x - 2.0 * h) && d.contains(x + 2.0 * h)) {
        return Err(Error::OutsideDomain { x, h, lo: d.lo(), hi: d.hi() });
    }
    let central = |h: f64| -> f64 {
        match order {
            1 => (f.eval(x + h) - f.eval(x - h)) / (2.0 * h),
            _ => (f.eval(x + h) - 2.0 * f.eval(x) + f.eval(x - h)) / (h * h),
        }
    };
    let coarse = central(2.0 * h);
    let fine = central(h);
    let value = (4.0 * fine - coarse) / 3.0;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { at: x })
    }
}
