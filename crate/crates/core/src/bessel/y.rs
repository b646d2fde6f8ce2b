//! Bessel functions of the second kind for real order.
//!
//! `Y_ν = (J_ν cos νπ − J_{−ν}) / sin νπ` away from the integers. Within
//! [`NEAR_INTEGER`] of an integer `n` the quotient is replaced by a limit
//! evaluated at `n ± ε`, `n ± 2ε`, `n ± 4ε` and combined by Richardson
//! extrapolation; a first-order Taylor correction carries it to the
//! requested order.

use crate::bessel::j::{check_target, j_eval, MAX_ARG, MIN_ORDER};
use crate::error::{domain, Error, Result};
use crate::gamma::{cos_pi, sin_pi};
use crate::types::{Eval, Method, Order, Precision};

const NEAR_INTEGER: f64 = 1e-6;
const PERTURB: f64 = 1e-3;
const EPS: f64 = f64::EPSILON;

/// Connection formula at a non-integer order.
fn y_connection(order: f64, x: f64) -> Result<Eval> {
    let s = sin_pi(order);
    let c = cos_pi(order);
    let jp = j_eval(order, x)?;
    let jm = j_eval(-order, x)?;
    let num = jp.value * c - jm.value;
    let v = num / s;
    let err = (c.abs() * jp.abs_err + jm.abs_err + EPS * (jp.value.abs() + jm.value.abs()))
        / s.abs()
        + EPS * v.abs();
    Ok(Eval::new(v, err, jp.method))
}

fn y_near_integer(order: f64, x: f64) -> Result<Eval> {
    let n = order.round();
    let delta = order - n;
    // Symmetric mean and central difference at n ± 2^i ε; both have even
    // error expansions in ε, removed by a two-level Richardson table.
    let mut means = [0.0; 3];
    let mut slopes = [0.0; 3];
    let mut round = 0.0_f64;
    for i in 0..3 {
        let e = PERTURB * (1 << i) as f64;
        let a = y_connection(n + e, x)?;
        let b = y_connection(n - e, x)?;
        means[i] = 0.5 * (a.value + b.value);
        slopes[i] = (a.value - b.value) / (2.0 * e);
        round = round.max(a.abs_err.max(b.abs_err));
    }
    let richardson = |t: [f64; 3]| {
        let r1 = (4.0 * t[0] - t[1]) / 3.0;
        let r2 = (4.0 * t[1] - t[2]) / 3.0;
        ((16.0 * r1 - r2) / 15.0, (r1 - r2).abs() / 15.0)
    };
    let (centre, centre_trunc) = richardson(means);
    let (slope, slope_trunc) = richardson(slopes);
    let v = centre + delta * slope;
    let err = 3.0 * round
        + centre_trunc
        + delta.abs() * (slope_trunc + 3.0 * round / PERTURB)
        + delta * delta * slope.abs()
        + EPS * v.abs();
    Ok(Eval::new(v, err, Method::PowerSeries))
}

/// `Y_order(x)` for `x > 0` and `|order|` a little inside `−MIN_ORDER`.
pub(crate) fn y_eval(order: f64, x: f64) -> Result<Eval> {
    if !order.is_finite() || !x.is_finite() {
        return domain(format!("Y: non-finite input (order {order}, x {x})"));
    }
    if !(x > 0.0) {
        return domain(format!("Y requires x > 0, got {x}"));
    }
    if x > MAX_ARG {
        return domain(format!("Y: x = {x} exceeds the supported cap {MAX_ARG}"));
    }
    if order.abs() > -MIN_ORDER - 8.0 * PERTURB {
        return domain(format!("Y: |order| = {} beyond supported range", order.abs()));
    }
    let delta = order - order.round();
    if delta.abs() < NEAR_INTEGER {
        y_near_integer(order, x)
    } else {
        y_connection(order, x)
    }
}

/// `Y_ν(x)` for `x > 0`.
///
/// Fails with `CancellationError` when the quotient by `sin νπ` leaves an
/// error estimate above the requested target.
pub fn bessel_y(nu: Order, x: f64, prec: &Precision) -> Result<Eval> {
    let e = y_eval(nu.value(), x)?;
    check_target(e, prec, "Y").map_err(|err| match err {
        Error::NonConvergence(m) => Error::Cancellation(m),
        other => other,
    })
}

pub(crate) fn yp_eval(order: f64, x: f64) -> Result<Eval> {
    let ym = y_eval(order - 1.0, x)?;
    let yp = y_eval(order + 1.0, x)?;
    let v = 0.5 * (ym.value - yp.value);
    Ok(Eval::new(v, 0.5 * (ym.abs_err + yp.abs_err) + EPS * v.abs(), ym.method))
}

/// `Y′_ν(x) = (Y_{ν−1}(x) − Y_{ν+1}(x)) / 2`.
pub fn bessel_y_prime(nu: Order, x: f64, prec: &Precision) -> Result<Eval> {
    let e = yp_eval(nu.value(), x)?;
    check_target(e, prec, "Y′")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn half_integer_closed_form() {
        for &x in &[0.3, 1.0, 4.0, 18.0, 35.0] {
            let y = y_eval(0.5, x).unwrap().value;
            let exact = -(2.0 / (PI * x)).sqrt() * x.cos();
            assert!((y - exact).abs() < 1e-13, "x = {x}: {y} vs {exact}");
        }
    }

    #[test]
    fn integer_orders_via_limit() {
        // Y_0(1), Y_1(1) reference values
        let y0 = y_eval(0.0, 1.0).unwrap();
        assert!((y0.value - 0.088_256_964_215_676_96).abs() < 1e-12, "{:?}", y0);
        let y1 = y_eval(1.0, 1.0).unwrap();
        assert!((y1.value + 0.781_212_821_300_288_7).abs() < 1e-12, "{:?}", y1);
    }

    #[test]
    fn accurate_on_both_sides_of_near_integer_switch() {
        let x = 3.0;
        for &o in &[2.0 + 0.9e-6, 2.0 + 1.1e-6, -3.0 - 0.5e-6] {
            let got = y_eval(o, x).unwrap();
            let want = crate::bessel::oracle::oracle_y(o, x, 40).unwrap().to_f64();
            assert!((got.value - want).abs() < 1e-10, "order {o}: {got:?} vs {want}");
            assert!((got.value - want).abs() <= got.abs_err.max(1e-15));
        }
    }

    #[test]
    fn rejects_nonpositive_argument() {
        assert!(y_eval(1.0, 0.0).is_err());
        assert!(y_eval(1.0, -1.0).is_err());
    }
}
