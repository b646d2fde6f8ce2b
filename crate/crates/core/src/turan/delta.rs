//! The Turánian `Δ_ν = J_ν² − J_{ν−1} J_{ν+1}` and the ratio
//! `Φ_ν = Δ_ν / J_ν²` together with its zero-sum representation.

use std::f64::consts::PI;

use crate::bessel::j::{j_eval, jp_eval};
use crate::error::{domain, Error, Result};
use crate::types::{Eval, Method, Order, Precision};
use crate::zeros::{nearest_zero, ZeroKind, ZeroTable};

const EPS: f64 = f64::EPSILON;
const POLE_DISTANCE: f64 = 1e-6;

/// `J_order(|x|)`; all Turán expressions are even in `x` so non-integer
/// orders are evaluated through the even extension.
pub(crate) fn jx(order: f64, x: f64) -> Result<Eval> {
    j_eval(order, x.abs())
}

pub(crate) fn mul(a: Eval, b: Eval) -> (f64, f64) {
    let v = a.value * b.value;
    (v, a.abs_err * b.value.abs() + b.abs_err * a.value.abs() + a.abs_err * b.abs_err + EPS * v.abs())
}

/// `Δ_ν(x)` for `ν > −1`.
pub fn delta(nu: Order, x: f64, _prec: &Precision) -> Result<Eval> {
    nu.require_gt(-1.0, "Δ")?;
    let o = nu.value();
    if x == 0.0 {
        if o < 0.0 {
            return domain(format!("Δ_{o} is unbounded at x = 0"));
        }
        // J_{ν−1} J_{ν+1} → 0 for ν ≥ 0; J_ν(0)² is 1 at ν = 0 and 0 beyond.
        let v = if o == 0.0 { 1.0 } else { 0.0 };
        return Ok(Eval::exact(v, Method::PowerSeries));
    }
    let j0 = jx(o, x)?;
    let (sq, e1) = mul(j0, j0);
    let (pr, e2) = mul(jx(o - 1.0, x)?, jx(o + 1.0, x)?);
    let v = sq - pr;
    Ok(Eval::new(v, e1 + e2 + EPS * (sq.abs() + pr.abs()), j0.method))
}

/// `Δ′_ν(x) = (2/x) J_{ν−1}(x) J_{ν+1}(x)`.
pub fn delta_prime(nu: Order, x: f64) -> Result<Eval> {
    nu.require_gt(-1.0, "Δ′")?;
    if x == 0.0 {
        return domain("Δ′ is evaluated for x ≠ 0");
    }
    let o = nu.value();
    let (pr, e) = mul(jx(o - 1.0, x)?, jx(o + 1.0, x)?);
    let s = 2.0 / x.abs() * x.signum();
    Ok(Eval::new(s * pr, s.abs() * e, Method::PowerSeries))
}

fn check_pole(o: f64, x: f64) -> Result<()> {
    let (d, _) = nearest_zero(ZeroKind::JZero, o, x.abs())?;
    if d <= POLE_DISTANCE {
        return Err(Error::NearPole(format!("x = {x} lies within {d:.2e} of a zero of J_{o}")));
    }
    Ok(())
}

/// `Φ_ν(x) = 1 − J_{ν−1} J_{ν+1} / J_ν²`.
pub fn phi(nu: Order, x: f64, _prec: &Precision) -> Result<Eval> {
    nu.require_gt(-1.0, "Φ")?;
    let o = nu.value();
    if x == 0.0 {
        return Ok(Eval::new(1.0 / (o + 1.0), EPS, Method::PowerSeries));
    }
    check_pole(o, x)?;
    let j0 = jx(o, x)?;
    let jm = jx(o - 1.0, x)?;
    let jp = jx(o + 1.0, x)?;
    let q = jm.value * jp.value / (j0.value * j0.value);
    let rel = jm.abs_err / jm.value.abs().max(1e-300)
        + jp.abs_err / jp.value.abs().max(1e-300)
        + 2.0 * j0.abs_err / j0.value.abs();
    let err = (q.abs() * rel).min(
        (jm.abs_err * jp.value.abs() + jp.abs_err * jm.value.abs()) / (j0.value * j0.value)
            + q.abs() * 2.0 * j0.abs_err / j0.value.abs(),
    );
    let v = 1.0 - q;
    Ok(Eval::new(v, err + EPS * (1.0 + q.abs()), j0.method))
}

/// `Φ′_ν(x) = (2/x)(1 − Φ) − 2 Φ J′_ν/J_ν`.
pub fn phi_prime(nu: Order, x: f64) -> Result<Eval> {
    let (p, d, _) = phi_derivs(nu.value(), x)?;
    Ok(Eval::new(d, 1e-13 * (1.0 + d.abs() + p.abs() / x.abs()), Method::PowerSeries))
}

/// `(Φ, Φ′, Φ″)` at `x > 0`.
pub(crate) fn phi_derivs(o: f64, x: f64) -> Result<(f64, f64, f64)> {
    if o <= -1.0 {
        return domain(format!("Φ requires order > −1, got {o}"));
    }
    if x <= 0.0 {
        return domain("Φ derivatives are evaluated for x > 0");
    }
    let j0 = jx(o, x)?.value;
    if j0 == 0.0 {
        return Err(Error::NearPole(format!("J_{o} vanishes at {x}")));
    }
    let jm = jx(o - 1.0, x)?.value;
    let jp = jx(o + 1.0, x)?.value;
    let p = 1.0 - jm * jp / (j0 * j0);
    let l = jp_eval(o, x)?.value / j0;
    let dp = 2.0 / x * (1.0 - p) - 2.0 * p * l;
    // L′ = −L/x − (1 − ν²/x²) − L² from Bessel's equation
    let dl = -l / x - (1.0 - o * o / (x * x)) - l * l;
    let d2 = -2.0 / (x * x) * (1.0 - p) - 2.0 / x * dp - 2.0 * dp * l - 2.0 * p * dl;
    Ok((p, dp, d2))
}

fn summand(x: f64, j: f64) -> f64 {
    let d = x * x - j * j;
    4.0 * j * j / (d * d)
}

/// `∫_t^∞ 4s²/(s²−x²)² ds`.
fn tail_integral(x: f64, t: f64) -> f64 {
    let base = 2.0 * t / (t * t - x * x);
    if x == 0.0 {
        return base + 2.0 / t;
    }
    base + ((t + x) / (t - x)).ln() / x
}

/// `Φ_ν(x) = Σ_n 4 j²_{ν,n} / (x² − j²_{ν,n})²` from the first
/// `n_zeros ≤ 100` tabulated zeros.
///
/// Beyond the table the sum continues over McMahon's three-term zeros for
/// a further 4000 indices and ends with the midpoint-rule integral of the
/// summand at unit zero density `1/π`; `abs_err` covers both
/// approximations. Requires `|x| < j_{ν, n_zeros}`.
pub fn phi_series(nu: Order, x: f64, n_zeros: u32, _prec: &Precision) -> Result<Eval> {
    nu.require_gt(-1.0, "Φ series")?;
    if n_zeros < 2 {
        return domain("Φ series needs at least two tabulated zeros");
    }
    let o = nu.value();
    let x = x.abs();
    let zs = ZeroTable::global().first(ZeroKind::JZero, nu, n_zeros)?;
    let last = zs[zs.len() - 1].x;
    if x >= last {
        return domain(format!("x = {x} must lie below the last tabulated zero {last}"));
    }
    if zs.iter().any(|z| (z.x - x).abs() <= POLE_DISTANCE) {
        return Err(Error::NearPole(format!("x = {x} lies on a zero of J_{o}")));
    }
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut add = |v: f64, sum: &mut f64| {
        // Kahan summation; the terms span many magnitudes.
        let y = v - comp;
        let t = *sum + y;
        comp = (t - *sum) - y;
        *sum = t;
    };
    for z in zs.iter().rev() {
        add(summand(x, z.x), &mut sum);
    }
    let mu = 4.0 * o * o;
    let extra = 4000u32;
    let mut asym_err = 0.0;
    let mut tmax = last;
    let mut tail = 0.0;
    let mut ctail = 0.0;
    for n in (n_zeros + 1)..=(n_zeros + extra) {
        let b8 = 8.0 * (n as f64 + o / 2.0 - 0.25) * PI;
        let b = b8 / 8.0;
        let j = b - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3));
        let next = (32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0)).abs() / (15.0 * b8.powi(5));
        let d = j * j - x * x;
        // |∂f/∂j| = 8 j (j² + x²) / (j² − x²)³
        asym_err += 8.0 * j * (j * j + x * x) / (d * d * d) * next;
        let y = summand(x, j) - ctail;
        let t = tail + y;
        ctail = (t - tail) - y;
        tail = t;
        tmax = j;
    }
    let t0 = tmax + PI / 2.0;
    let rem = tail_integral(x, t0) / PI;
    let rem_err = rem * ((PI / t0).powi(2) + (mu + 1.0) / (t0 * t0));
    let value = sum + (tail + rem);
    let err = asym_err + rem_err + 1e3 * EPS * value.abs() + 1e-16 * n_zeros as f64;
    Ok(Eval::new(value, err, Method::Asymptotic))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn delta_at_origin() {
        let p = Precision::default();
        assert_eq!(delta(o(0.0), 0.0, &p).unwrap().value, 1.0);
        assert_eq!(delta(o(1.5), 0.0, &p).unwrap().value, 0.0);
    }

    #[test]
    fn delta_known_value() {
        // Δ_1(1) = J_1(1)² − J_0(1) J_2(1)
        let v = delta(o(1.0), 1.0, &Precision::default()).unwrap().value;
        let j0 = 0.765_197_686_557_966_6_f64;
        let j1 = 0.440_050_585_744_933_5_f64;
        let j2 = 0.114_903_484_931_900_5_f64;
        assert!((v - (j1 * j1 - j0 * j2)).abs() < 1e-15);
    }

    #[test]
    fn phi_limits() {
        let p = Precision::default();
        assert!((phi(o(2.0), 1e-4, &p).unwrap().value - 1.0 / 3.0).abs() < 1e-8);
        assert!(matches!(phi(o(0.0), 2.404_825_557_695_773, &p), Err(Error::NearPole(_))));
    }

    #[test]
    fn phi_series_agrees_with_ratio() {
        let p = Precision::default();
        let s = phi_series(o(1.0), 2.0, 100, &p).unwrap();
        let r = phi(o(1.0), 2.0, &p).unwrap();
        assert!((s.value - r.value).abs() < 1e-8, "{s:?} {r:?}");
        assert!((s.value - r.value).abs() <= s.abs_err + r.abs_err);
    }

    #[test]
    fn phi_prime_matches_difference() {
        let (nu, x, h) = (1.5, 3.0, 1e-5);
        let p = Precision::default();
        let fd = (phi(o(nu), x + h, &p).unwrap().value - phi(o(nu), x - h, &p).unwrap().value) / (2.0 * h);
        let (_, d, d2) = phi_derivs(nu, x).unwrap();
        assert!((fd - d).abs() < 1e-8);
        let fd2 = (phi_derivs(nu, x + h).unwrap().1 - phi_derivs(nu, x - h).unwrap().1) / (2.0 * h);
        assert!((fd2 - d2).abs() < 1e-7);
    }
}
