//! Bessel functions of the first kind for real order.
//!
//! Two regimes:
//!
//! * `|x| ≤ max(12, 2ν)`: the defining power series, summed in double-double
//!   so that the cancellation among its terms costs nothing visible in `f64`.
//! * otherwise: Miller's backward recurrence over the orders `ν₀ + k`,
//!   `ν₀ = ν − ⌊ν⌋`, normalised by the Neumann sum
//!   `(x/2)^ν₀ = Σ_k (ν₀ + 2k) Γ(ν₀ + k) / k! · J_{ν₀+2k}(x)`.
//!   Orders below `ν₀` are reached by the (stable, since `|ν| < x`) downward
//!   three-term recurrence.

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::gamma::{digamma_any, gamma, ln_gamma_signed, rgamma};
use crate::types::{Eval, Method, Order, Precision};

/// Lowest order accepted by the internal evaluator. Turán-type combinations
/// reach `ν − m` with `ν > −1` and `m ≤ 6`; `Y_ν` needs `J_{−ν}`.
pub const MIN_ORDER: f64 = -10.0;
/// Largest argument the evaluators accept. The CLI caps user input at
/// [`CLI_MAX_ARG`]; zero tables for `n ≤ 100` need the larger range.
pub const MAX_ARG: f64 = 400.0;
pub const CLI_MAX_ARG: f64 = 40.0;

const SERIES_SWITCH: f64 = 12.0;
const EPS: f64 = f64::EPSILON;

fn series_regime(order: f64, x: f64) -> bool {
    x <= SERIES_SWITCH.max(2.0 * order)
}

/// `(x/2)^ν / Γ(ν+1)` together with a relative error estimate.
fn series_prefactor(order: f64, half_x: f64) -> (f64, f64) {
    // Γ sees the rounded ν+1; the lost part shifts ln Γ by about ψ·lost
    let arg = order + 1.0;
    let b = arg - order;
    let lost = (order - (arg - b)) + (1.0 - b);
    let shift = if lost == 0.0 { 0.0 } else { 1.25 * (lost * digamma_any(arg)).abs() };
    if order.abs() < 30.0 {
        let p = half_x.powf(order) * rgamma(arg);
        if p.is_finite() && p != 0.0 {
            return (p, 4.0 * EPS + shift);
        }
    }
    match ln_gamma_signed(arg) {
        Some((sign, lg)) => {
            let expo = order * half_x.ln() - lg;
            (sign * expo.exp(), EPS * (4.0 + expo.abs()) + shift)
        }
        // 1/Γ vanishes at the poles; only reached for integer orders ≤ −1,
        // which callers fold onto positive orders first.
        None => (0.0, 0.0),
    }
}

/// Power series for `x > 0`.
fn j_series(order: f64, x: f64, max_terms: usize) -> Result<Eval> {
    let half = 0.5 * x;
    let (pref, pref_rel) = series_prefactor(order, half);
    if pref == 0.0 {
        return Ok(Eval::new(0.0, f64::MIN_POSITIVE, Method::PowerSeries));
    }
    let q = Dd::new(half) * Dd::new(half);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut max_term = 1.0_f64;
    let peak = half.max(-order).max(1.0);
    let mut m = 0usize;
    loop {
        m += 1;
        if m > max_terms {
            return Err(Error::NonConvergence(format!(
                "J series for order {order} at x = {x} did not converge in {max_terms} terms"
            )));
        }
        let mf = m as f64;
        term = -((term * q).div_f64(mf) / (Dd::new(mf) + Dd::new(order)));
        sum = sum + term;
        let t = term.to_f64().abs();
        max_term = max_term.max(t);
        // Past the peak and past any sign irregularity of (ν+1)_m the series
        // alternates with decreasing terms, bounding the tail by the next term.
        if mf > peak && mf + order > 0.0 && t <= 1e-18 * sum.to_f64().abs().max(1e-300) {
            let next = t * half * half / ((mf + 1.0) * (mf + 1.0 + order));
            let s = sum.to_f64();
            let v = pref * s;
            let err =
                v.abs() * (pref_rel + 2.0 * EPS) + pref.abs() * (next + 1e-31 * max_term * mf);
            return Ok(Eval::new(v, err, Method::PowerSeries));
        }
    }
}

/// Backward recurrence values `J_{ν₀+k}(x)` for k = 0..=kmax, ν₀ ∈ [0, 1).
pub(crate) fn miller_sequence(nu0: f64, x: f64, kmax: usize) -> (Vec<f64>, f64) {
    let top = (kmax as f64).max(x);
    let start = (top + 25.0 + 6.0 * top.cbrt()).ceil() as usize;
    let start = start + (start % 2);
    let mut vals = vec![0.0; kmax + 1];
    let mut f_next = 0.0_f64;
    let mut f = 1e-280_f64;
    // norm = Σ c_k f_{ν₀+2k}, accumulated as the recurrence passes even k.
    let mut norm_hi = 0.0_f64;
    // c_0 = Γ(1+ν₀), c_k = (ν₀+2k) g_k with g_k = Γ(ν₀+k)/k!,
    // g_1 = Γ(ν₀+1), g_{k+1} = g_k (ν₀+k)/(k+1).
    let half_start = start / 2;
    let mut coeffs = Vec::with_capacity(half_start + 1);
    let g1 = gamma(nu0 + 1.0);
    coeffs.push(g1);
    let mut g = g1;
    for k in 1..=half_start {
        if k > 1 {
            g *= (nu0 + (k - 1) as f64) / k as f64;
        }
        coeffs.push((nu0 + 2.0 * k as f64) * g);
    }
    let mut peak = 0.0_f64;
    let mut k = start;
    loop {
        if k <= kmax {
            vals[k] = f;
        }
        if k % 2 == 0 {
            norm_hi += coeffs[k / 2] * f;
        }
        if k == 0 {
            break;
        }
        let f_prev = 2.0 * (nu0 + k as f64) / x * f - f_next;
        f_next = f;
        f = f_prev;
        k -= 1;
        if f.abs() > 1e250 {
            let s = 1e-250;
            f *= s;
            f_next *= s;
            norm_hi *= s;
            for v in vals.iter_mut() {
                *v *= s;
            }
        }
    }
    let scale = (0.5 * x).powf(nu0) / norm_hi;
    for v in vals.iter_mut() {
        *v *= scale;
        peak = peak.max(v.abs());
    }
    (vals, peak)
}

fn j_miller(order: f64, x: f64) -> Eval {
    let base = order.floor();
    let nu0 = order - base;
    // Absolute error follows the oscillation envelope, not the local value.
    let envelope = (2.0 / (std::f64::consts::PI * x)).sqrt().min(1.0);
    let err_for = |v: f64, peak: f64, steps: f64| {
        (64.0 + 4.0 * steps) * EPS * v.abs().max(peak.min(1.0)).max(envelope)
    };
    if base >= 0.0 {
        let k = base as usize;
        let (vals, peak) = miller_sequence(nu0, x, k);
        let v = vals[k];
        Eval::new(v, err_for(v, peak, 0.0), Method::BackwardRecurrence)
    } else {
        let (vals, peak) = miller_sequence(nu0, x, 1);
        let mut upper = vals[1];
        let mut cur = vals[0];
        let mut o = nu0;
        let steps = -base;
        for _ in 0..(steps as usize) {
            let lower = 2.0 * o / x * cur - upper;
            upper = cur;
            cur = lower;
            o -= 1.0;
        }
        Eval::new(cur, err_for(cur, peak, steps), Method::BackwardRecurrence)
    }
}

/// `J_order(x)` for any order ≥ [`MIN_ORDER`]; negative `x` only for integer order.
pub(crate) fn j_eval(order: f64, x: f64) -> Result<Eval> {
    j_eval_terms(order, x, Precision::default().max_terms)
}

pub(crate) fn j_eval_terms(order: f64, x: f64, max_terms: usize) -> Result<Eval> {
    if !order.is_finite() || !x.is_finite() {
        return domain(format!("J: non-finite input (order {order}, x {x})"));
    }
    if order < MIN_ORDER {
        return domain(format!("J: order {order} below supported minimum {MIN_ORDER}"));
    }
    if x.abs() > MAX_ARG {
        return domain(format!("J: |x| = {} exceeds the supported cap {MAX_ARG}", x.abs()));
    }
    let is_int = order.fract() == 0.0;
    if is_int && order < 0.0 {
        let n = -order;
        let e = j_eval_terms(n, x, max_terms)?;
        let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(Eval::new(sign * e.value, e.abs_err, e.method));
    }
    if x < 0.0 {
        if !is_int {
            return domain(format!(
                "J: negative argument {x} with non-integer order {order} (principal branch not supported)"
            ));
        }
        let e = j_eval_terms(order, -x, max_terms)?;
        let sign = if (order as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(Eval::new(sign * e.value, e.abs_err, e.method));
    }
    if x == 0.0 {
        return if order == 0.0 {
            Ok(Eval::exact(1.0, Method::PowerSeries))
        } else if order > 0.0 {
            Ok(Eval::exact(0.0, Method::PowerSeries))
        } else {
            domain(format!("J: order {order} is singular at x = 0"))
        };
    }
    if series_regime(order, x) {
        j_series(order, x, max_terms)
    } else {
        Ok(j_miller(order, x))
    }
}

/// `J_ν(x)`.
///
/// Accepts orders down to [`MIN_ORDER`] so that the shifted orders `ν − m`
/// appearing in Turán-type expressions can be evaluated; the order-`ν > −1`
/// theory is the one the rest of the crate certifies.
pub fn bessel_j(nu: Order, x: f64, prec: &Precision) -> Result<Eval> {
    let e = j_eval_terms(nu.value(), x, prec.max_terms)?;
    check_target(e, prec, "J")
}

pub(crate) fn check_target(e: Eval, prec: &Precision, what: &str) -> Result<Eval> {
    if e.abs_err <= prec.target_abs_err * e.value.abs().max(1.0) {
        Ok(e)
    } else {
        Err(Error::NonConvergence(format!(
            "{what}: error estimate {:.3e} exceeds target {:.3e}",
            e.abs_err, prec.target_abs_err
        )))
    }
}

/// `J′_ν(x)` at `x = 0` from the term-wise differentiated series.
fn j_prime_at_zero(order: f64) -> Result<Eval> {
    if order == 0.0 || order > 1.0 {
        Ok(Eval::exact(0.0, Method::PowerSeries))
    } else if order == 1.0 {
        Ok(Eval::exact(0.5, Method::PowerSeries))
    } else if order.fract() == 0.0 && order < 0.0 {
        j_prime_at_zero(-order).map(|e| {
            let sign = if (order as i64) % 2 == 0 { 1.0 } else { -1.0 };
            Eval::new(sign * e.value, e.abs_err, e.method)
        })
    } else {
        domain(format!("J′: order {order} has an unbounded derivative at x = 0"))
    }
}

/// Both recurrence forms of `J′_ν(x)`:
/// `J_{ν−1} − (ν/x) J_ν` and `(ν/x) J_ν − J_{ν+1}`.
pub fn bessel_j_prime_forms(nu: Order, x: f64) -> Result<(Eval, Eval)> {
    let o = nu.value();
    if x == 0.0 {
        let e = j_prime_at_zero(o)?;
        return Ok((e, e));
    }
    let jm = j_eval(o - 1.0, x)?;
    let j0 = j_eval(o, x)?;
    let jp = j_eval(o + 1.0, x)?;
    let r = o / x;
    let f1 = jm.value - r * j0.value;
    let f2 = r * j0.value - jp.value;
    let e1 = jm.abs_err + r.abs() * j0.abs_err + EPS * (jm.value.abs() + (r * j0.value).abs());
    let e2 = jp.abs_err + r.abs() * j0.abs_err + EPS * (jp.value.abs() + (r * j0.value).abs());
    Ok((Eval::new(f1, e1, j0.method), Eval::new(f2, e2, j0.method)))
}

pub(crate) fn jp_eval(order: f64, x: f64) -> Result<Eval> {
    if x == 0.0 {
        return j_prime_at_zero(order);
    }
    let jm = j_eval(order - 1.0, x)?;
    let jp = j_eval(order + 1.0, x)?;
    let v = 0.5 * (jm.value - jp.value);
    let err = 0.5 * (jm.abs_err + jp.abs_err) + EPS * v.abs();
    Ok(Eval::new(v, err, jm.method))
}

/// `J′_ν(x) = (J_{ν−1}(x) − J_{ν+1}(x)) / 2`, the mean of the two
/// recurrence forms.
pub fn bessel_j_prime(nu: Order, x: f64, prec: &Precision) -> Result<Eval> {
    let e = jp_eval(nu.value(), x)?;
    check_target(e, prec, "J′")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn j(o: f64, x: f64) -> f64 {
        j_eval(o, x).unwrap().value
    }

    #[test]
    fn order_zero_at_origin() {
        assert_eq!(j(0.0, 0.0), 1.0);
        assert_eq!(j(2.0, 0.0), 0.0);
        assert!(j_eval(-0.5, 0.0).is_err());
    }

    #[test]
    fn half_integer_closed_form_both_regimes() {
        for &x in &[0.5, 1.0, 2.0, 5.0, 13.0, 25.0, 39.5] {
            let exact = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((j(0.5, x) - exact).abs() < 1e-13, "x = {x}");
            let exact_m = (2.0 / (PI * x)).sqrt() * x.cos();
            assert!((j(-0.5, x) - exact_m).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn regimes_agree_at_switch() {
        for &o in &[0.0, 0.3, 1.0, 2.7, 5.5] {
            let x = 12.0;
            let s = j_series(o, x, 500).unwrap().value;
            let m = j_miller(o, x).value;
            assert!((s - m).abs() < 1e-14, "order {o}: {s} vs {m}");
        }
        for &o in &[-0.4, -2.3, -6.8] {
            let x = 11.5;
            let s = j_series(o, x, 500).unwrap().value;
            let m = j_miller(o, x).value;
            assert!((s - m).abs() < 1e-13, "order {o}: {s} vs {m}");
        }
    }

    #[test]
    fn integer_symmetries() {
        for &x in &[0.7, 3.0, 17.0] {
            assert_eq!(j(-1.0, x), -j(1.0, x));
            assert_eq!(j(-2.0, x), j(2.0, x));
            assert_eq!(j(3.0, -x), -j(3.0, x));
        }
        assert!(j_eval(0.5, -1.0).is_err());
    }

    #[test]
    fn derivative_examples() {
        for &x in &[1.0, 2.0] {
            let d = jp_eval(0.0, x).unwrap().value;
            assert!((d + j(1.0, x)).abs() < 1e-14);
        }
        assert_eq!(jp_eval(1.0, 0.0).unwrap().value, 0.5);
        assert!(jp_eval(0.5, 0.0).is_err());
    }

    #[test]
    fn first_zero_of_j0() {
        assert!(j(0.0, 2.404_825_557_695_773).abs() < 1e-15);
    }
}
