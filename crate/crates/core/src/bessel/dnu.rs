use crate::bessel::j::j_eval;
use crate::error::{domain, Error, Result};
use crate::types::{Eval, Method, Order};

fn five_point(order: f64, x: f64, h: f64) -> Result<(f64, f64)> {
    let f = |o: f64| j_eval(o, x);
    let (a, b, c, d) = (f(order - 2.0 * h)?, f(order - h)?, f(order + h)?, f(order + 2.0 * h)?);
    let v = (a.value - 8.0 * b.value + 8.0 * c.value - d.value) / (12.0 * h);
    let round = (a.abs_err + 8.0 * b.abs_err + 8.0 * c.abs_err + d.abs_err) / (12.0 * h);
    Ok((v, round))
}

/// `∂J_ν(x)/∂ν` by a five-point central difference at steps `h` and `h/2`
/// combined by Richardson extrapolation.
///
/// Fails with `StepTooLarge` when the two estimates disagree by more than
/// `1e-3 · max(1, |D|)`.
pub fn bessel_j_dnu(nu: Order, x: f64, h: f64) -> Result<Eval> {
    let o = nu.value();
    if !(h > 0.0 && h.is_finite()) {
        return domain(format!("order step must be positive, got {h}"));
    }
    if o - 2.0 * h <= -1.0 {
        return domain(format!("order stencil reaches {} ≤ −1", o - 2.0 * h));
    }
    let (d1, r1) = five_point(o, x, h)?;
    let (d2, r2) = five_point(o, x, h / 2.0)?;
    if (d1 - d2).abs() > 1e-3 * d2.abs().max(1.0) {
        return Err(Error::StepTooLarge(format!(
            "order derivative estimates {d1} and {d2} disagree at step {h}"
        )));
    }
    let v = (16.0 * d2 - d1) / 15.0;
    let err = (d2 - d1).abs() / 15.0 * 0.1 + (16.0 * r2 + r1) / 15.0 + f64::EPSILON * v.abs();
    Ok(Eval::new(v, err, Method::PowerSeries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn agrees_with_fine_symmetric_difference() {
        let x = 2.0;
        let d = bessel_j_dnu(Order::new(0.5).unwrap(), x, 1e-2).unwrap();
        let fine = (j_eval(0.5 + 1e-5, x).unwrap().value - j_eval(0.5 - 1e-5, x).unwrap().value)
            / 2e-5;
        assert!((d.value - fine).abs() < 1e-8, "{} vs {fine}", d.value);
    }

    #[test]
    fn order_zero_relation() {
        // ∂J_ν/∂ν at ν = 0 equals (π/2) Y_0(x)
        let x = 3.0;
        let d = bessel_j_dnu(Order::new(0.0).unwrap(), x, 1e-2);
        let y0 = crate::bessel::y::y_eval(0.0, x).unwrap().value;
        assert!((d.unwrap().value - PI / 2.0 * y0).abs() < 1e-9);
    }

    #[test]
    fn rejects_step_reaching_minus_one() {
        assert!(bessel_j_dnu(Order::new(-0.9).unwrap(), 1.0, 0.1).is_err());
        assert!(bessel_j_dnu(Order::new(1.0).unwrap(), 1.0, 0.0).is_err());
    }
}
