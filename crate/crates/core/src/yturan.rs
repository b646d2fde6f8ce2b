//! Turán-type expressions for `Y_ν`: `Δ̄_ν = Y_ν² − Y_{ν−1} Y_{ν+1}`,
//! `Ψ_ν = x² Δ̄_ν`, its sign-change point `x_ν`, and the Y-bound family.

use serde::{Deserialize, Serialize};

use crate::bessel::y::{y_eval, yp_eval};
use crate::error::{domain, Error, Result};
use crate::grid::Grid;
use crate::tracked::T;
use crate::turan::{check_inequality_lenient, InequalityId, InequalityReport, YDomain};
use crate::types::{Eval, Method, Order, Precision};
use crate::zeros::{zero, ZeroKind};

/// Left end of the `x_ν` bracket; `Y_ν` is singular at 0.
pub const X_NU_FLOOR: f64 = 1e-4;
const Y_ARG_CAP: f64 = 40.0;

fn yt(order: f64, x: f64) -> Result<T> {
    Ok(y_eval(order, x)?.into())
}

fn positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        domain(format!("second-kind expressions need x > 0, got {x}"))
    }
}

fn ev(t: T) -> Eval {
    Eval::new(t.v, t.e, Method::PowerSeries)
}

/// `Δ̄_ν(x)` in product form.
pub fn delta_bar(nu: Order, x: f64, _prec: &Precision) -> Result<Eval> {
    positive(x)?;
    let o = nu.value();
    let v = yt(o, x)?.sq() - yt(o - 1.0, x)? * yt(o + 1.0, x)?;
    Ok(ev(v))
}

fn psi_forms(o: f64, x: f64) -> Result<(T, T)> {
    let (ym, y0, y1) = (yt(o - 1.0, x)?, yt(o, x)?, yt(o + 1.0, x)?);
    let xyp: T = T::from(yp_eval(o, x)?) * x;
    let root = y0.sq() * (x * x - o * o) + xyp.sq();
    let product = (y0.sq() - ym * y1) * (x * x);
    Ok((root, product))
}

/// `Ψ_ν(x) = (x² − ν²) Y_ν² + x² Y′_ν²`, cross-checked against `x² Δ̄_ν`.
pub fn psi(nu: Order, x: f64, _prec: &Precision) -> Result<Eval> {
    positive(x)?;
    let (a, b) = psi_forms(nu.value(), x)?;
    if (a.v - b.v).abs() > 4.0 * (a.e + b.e) + 1e-300 {
        return Err(Error::Cancellation(format!(
            "Ψ forms disagree at ν = {}, x = {x}: {} vs {}",
            nu.value(),
            a.v,
            b.v
        )));
    }
    Ok(ev(a))
}

/// The root `x_ν` of `Ψ_ν` and the bracket that isolates it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XNuRecord {
    pub nu: Order,
    pub x_nu: f64,
    pub residual: f64,
    pub bound_ok: bool,
    pub bracket: (f64, f64),
    pub psi_at_bracket: (f64, f64),
}

fn psi_value(o: f64, x: f64) -> Result<f64> {
    Ok(psi_forms(o, x)?.0.v)
}

/// Bisection for the sign change of `Ψ_ν` on `[1e−4, ν]`, widening the
/// right end towards 40 only if `Ψ_ν(ν) < 0`.
pub fn find_x_nu(nu: Order, _prec: &Precision) -> Result<XNuRecord> {
    nu.require_gt(1.0, "x_ν")?;
    let o = nu.value();
    let mut lo = X_NU_FLOOR;
    let mut hi = o.min(Y_ARG_CAP);
    let mut f_lo = psi_value(o, lo)?;
    let mut f_hi = psi_value(o, hi)?;
    while f_hi <= 0.0 && hi < Y_ARG_CAP {
        hi = (hi * 1.5).min(Y_ARG_CAP);
        f_hi = psi_value(o, hi)?;
    }
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::BracketFailure(format!(
            "Ψ_{o} has no sign change on [{lo}, {hi}]: {f_lo:e}, {f_hi:e}"
        )));
    }
    let bracket = (lo, hi);
    let psi_at_bracket = (f_lo, f_hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = psi_value(o, mid)?;
        if f < 0.0 {
            lo = mid;
            f_lo = f;
        } else {
            hi = mid;
            f_hi = f;
        }
    }
    let (x_nu, residual) = if f_lo.abs() < f_hi.abs() { (lo, f_lo.abs()) } else { (hi, f_hi.abs()) };
    Ok(XNuRecord { nu, x_nu, residual, bound_ok: x_nu <= o, bracket, psi_at_bracket })
}

/// Residuals of `(ν+1)Δ̄_ν − νΔ̄_{ν+1} = Y_ν² + Y_{ν+1}²` and, when the
/// roots exist, the derived signs `Δ̄_ν(x_{ν+1}) ≥ 0`, `Δ̄_{ν+1}(x_ν) ≤ 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossOrderCheck {
    pub residual: f64,
    pub lhs: f64,
    pub delta_at_next_root: Option<f64>,
    pub next_delta_at_root: Option<f64>,
}

/// Scaled residual of the cross-order identity at `(ν, x)`.
pub fn cross_order_identity(nu: Order, x: f64, prec: &Precision) -> Result<CrossOrderCheck> {
    positive(x)?;
    let o = nu.value();
    let d0 = delta_bar(nu, x, prec)?;
    let d1 = delta_bar(Order::new(o + 1.0)?, x, prec)?;
    let lhs = (o + 1.0) * d0.value - o * d1.value;
    let rhs = yt(o, x)?.sq() + yt(o + 1.0, x)?.sq();
    let scale = ((o + 1.0) * d0.value).abs().max((o * d1.value).abs()).max(rhs.v).max(1.0);
    let residual = (lhs - rhs.v).abs() / scale;
    let (mut a, mut b) = (None, None);
    if o > 0.0 {
        let next = find_x_nu(Order::new(o + 1.0)?, prec)?.x_nu;
        a = Some(delta_bar(nu, next, prec)?.value);
        if o > 1.0 {
            let here = find_x_nu(nu, prec)?.x_nu;
            b = Some(delta_bar(Order::new(o + 1.0)?, here, prec)?.value);
        }
    }
    Ok(CrossOrderCheck { residual, lhs, delta_at_next_root: a, next_delta_at_root: b })
}

/// Critical points of `Δ̄_ν` at the n-th zeros of `Y_{ν∓1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremaBar {
    pub nu: f64,
    pub n: u32,
    pub max_at: f64,
    pub max_value: f64,
    pub min_at: f64,
    pub min_value: f64,
    /// `|Δ̄′|` at both points
    pub slopes: (f64, f64),
    /// `Δ̄″` at both points and the closed forms `∓4ν Y_ν²/y²`
    pub curvature: ((f64, f64), (f64, f64)),
    /// largest of `|Δ̄(y) − Y_ν²(y)|` at the two points
    pub value_residual: f64,
}

fn dbar_derivs(o: f64, x: f64) -> Result<(f64, f64, f64)> {
    let (ym, y0, y1) = (y_eval(o - 1.0, x)?.value, y_eval(o, x)?.value, y_eval(o + 1.0, x)?.value);
    let d = y0 * y0 - ym * y1;
    let d1 = 2.0 / x * ym * y1;
    let ypm = yp_eval(o - 1.0, x)?.value;
    let yp1 = yp_eval(o + 1.0, x)?.value;
    let d2 = 2.0 / x * (ypm * y1 + ym * yp1) - 2.0 / (x * x) * ym * y1;
    Ok((d, d1, d2))
}

/// Relative maxima and minima of `Δ̄_ν`: for `ν > 0` maxima at `y_{ν−1,n}`
/// and minima at `y_{ν+1,n}`, reversed for `ν < 0`.
pub fn extrema_bar(nu: Order, n: u32, prec: &Precision) -> Result<ExtremaBar> {
    let o = nu.value();
    if o == 0.0 {
        return domain("Δ̄ extrema are stated for ν ≠ 0");
    }
    let ym = zero(ZeroKind::YZero, Order::new(o - 1.0)?, n, prec)?.x;
    let yp = zero(ZeroKind::YZero, Order::new(o + 1.0)?, n, prec)?.x;
    let (a, b) = (dbar_derivs(o, ym)?, dbar_derivs(o, yp)?);
    let sa = y_eval(o, ym)?.value.powi(2);
    let sb = y_eval(o, yp)?.value.powi(2);
    let ca = -4.0 * o / (ym * ym) * sa;
    let cb = 4.0 * o / (yp * yp) * sb;
    let value_residual = (a.0 - sa).abs().max((b.0 - sb).abs());
    let (max_at, max_value, min_at, min_value) =
        if o > 0.0 { (ym, a.0, yp, b.0) } else { (yp, b.0, ym, a.0) };
    Ok(ExtremaBar {
        nu: o,
        n,
        max_at,
        max_value,
        min_at,
        min_value,
        slopes: (a.1.abs(), b.1.abs()),
        curvature: ((a.2, ca), (b.2, cb)),
        value_residual,
    })
}

/// The four Y-bounds on both domain variants plus the Turán-type margins
/// `Δ̄_ν ≥ 0` and `Δ̄_ν − Y_ν²/(1−ν) ≥ 0` on `x ≥ x_ν`.
///
/// Orders of `grid` outside a variant's hypotheses are skipped for that
/// variant.
pub fn y_bound_suite(grid: &Grid, prec: &Precision) -> Result<Vec<InequalityReport>> {
    let mut ids = vec![InequalityId::TuranY1, InequalityId::TuranY0];
    for d in [YDomain::Standard, YDomain::Widened] {
        for k in 1..=4 {
            ids.push(InequalityId::BoundY(k, d));
        }
    }
    ids.iter().map(|&id| check_inequality_lenient(id, grid, prec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn order_zero_is_sum_of_squares() {
        let p = Precision::default();
        let d = delta_bar(o(0.0), 1.0, &p).unwrap().value;
        let s = y_eval(0.0, 1.0).unwrap().value.powi(2) + y_eval(1.0, 1.0).unwrap().value.powi(2);
        assert!((d - s).abs() < 1e-12);
    }

    #[test]
    fn psi_slope_is_two_x_y_squared() {
        let p = Precision::default();
        let (nu, x, h) = (2.0, 3.0, 1e-5);
        let fd = (psi(o(nu), x + h, &p).unwrap().value - psi(o(nu), x - h, &p).unwrap().value) / (2.0 * h);
        let exact = 2.0 * x * y_eval(nu, x).unwrap().value.powi(2);
        assert!(((fd - exact) / exact).abs() < 1e-6);
        assert!(psi(o(2.0), 0.05, &p).unwrap().value < 0.0);
    }

    #[test]
    fn x_nu_brackets_sign_change() {
        let p = Precision::default();
        let r = find_x_nu(o(2.0), &p).unwrap();
        assert!(r.bound_ok);
        assert!(psi(o(2.0), r.x_nu / 2.0, &p).unwrap().value < 0.0);
        assert!(psi(o(2.0), r.x_nu + 2.0, &p).unwrap().value > 0.0);
        // coarse scan oracle
        let step = 1e-3;
        let mut x = X_NU_FLOOR;
        while psi_value(2.0, x + step).unwrap() < 0.0 {
            x += step;
        }
        assert!(r.x_nu >= x && r.x_nu <= x + step + 1e-12);
        assert!(find_x_nu(o(1.0), &p).is_err());
    }

    #[test]
    fn cross_order_corollaries() {
        let p = Precision::default();
        let c = cross_order_identity(o(2.0), 2.0, &p).unwrap();
        assert!(c.residual < 1e-12);
        assert!(c.delta_at_next_root.unwrap() >= -1e-9);
        assert!(c.next_delta_at_root.unwrap() <= 1e-9);
        assert!(cross_order_identity(o(0.5), 1.0, &p).unwrap().lhs > 0.0);
    }

    #[test]
    fn extrema_at_neighbouring_zeros() {
        let p = Precision::default();
        let e = extrema_bar(o(1.0), 1, &p).unwrap();
        assert!(e.slopes.0 < 1e-8 && e.slopes.1 < 1e-8);
        assert!(e.value_residual < 1e-9);
        assert!(e.curvature.1 .0 > 0.0);
        assert!((e.curvature.0 .0 - e.curvature.0 .1).abs() < 1e-8);
    }
}
