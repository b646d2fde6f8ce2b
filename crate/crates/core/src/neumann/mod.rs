//! Second-kind Neumann series `𝔊(x) = Σ_{n≥1} θ_n J_{μ+an}(x) J_{ν+bn}(x)`:
//! direct summation, convergence radius, and the double-integral
//! representation built on the condensed Euler–Maclaurin formula.

mod integral;
mod theta;

use serde::{Deserialize, Serialize};

use crate::bessel::{landau_bound, CLI_MAX_ARG};
use crate::error::{domain, Error, Result};
use crate::turan::identity::{ln_power_bound, sum_with_tail};
use crate::turan::jx;
use crate::types::{Eval, Method, Order, Precision};

pub use integral::{euler_maclaurin_condensed, g_integral, EmCheck, QuadConfig, SmoothFn};
pub use theta::{
    builtin, builtin_thetas, parse_theta_params, CatalogEntry, GammaQuotient, NeumannInstance, ThetaExpr, ThetaSpec,
};

/// `I_𝔊 = (lo, hi)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainInterval {
    pub lo: f64,
    pub hi: f64,
}

impl DomainInterval {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }
}

/// `hi = 2 min{1, (a^a b^b / ρ)^{1/(a+b)} / e}`, with `hi = 2` at `ρ = 0`.
pub fn domain_interval(a: f64, b: f64, rho: f64) -> Result<DomainInterval> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return domain(format!("series steps must be positive, got a = {a}, b = {b}"));
    }
    if !(rho >= 0.0) {
        return domain(format!("ρ must be non-negative, got {rho}"));
    }
    if rho == 0.0 {
        return Ok(DomainInterval { lo: 0.0, hi: 2.0 });
    }
    let s = a + b;
    let r = ((a * a.ln() + b * b.ln() - rho.ln()) / s - 1.0).exp();
    Ok(DomainInterval { lo: 0.0, hi: 2.0 * r.min(1.0) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoEstimate {
    pub rho: f64,
    /// `|θ_n|^{1/n}/n^{a+b}` was still increasing over the sampled window.
    pub unreliable: bool,
    pub analytic: bool,
}

/// `ρ = limsup |θ_n|^{1/n} / n^{a+b}`, read off `n ∈ [n_max/2, n_max]`.
pub fn rho_estimate(theta: &ThetaSpec, a: f64, b: f64, n_max: u32) -> Result<RhoEstimate> {
    if let Some(rho) = theta.rho_analytic {
        return Ok(RhoEstimate { rho, unreliable: false, analytic: true });
    }
    if n_max < 50 {
        return domain(format!("ρ estimate needs n_max ≥ 50, got {n_max}"));
    }
    let r = |n: u32| {
        let n = n as f64;
        let l = theta.ln_abs(n);
        if l == f64::NEG_INFINITY {
            0.0
        } else {
            (l / n - (a + b) * n.ln()).exp()
        }
    };
    let lo = n_max / 2;
    let rho = (lo..=n_max).map(r).fold(0.0, f64::max);
    let unreliable = r(n_max) > r(lo) && r(n_max) > 0.0;
    Ok(RhoEstimate { rho, unreliable, analytic: false })
}

/// Decay of the auxiliary series `Σ |θ_n| n^{−2/3}` and of the Landau
/// majorant `b_L² Σ |θ_n| ((μ+an)(ν+bn))^{−1/3}`, by the slope of
/// `ln(term)` against `ln n` between `n = 1000` and `n = 2000`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuxCheck {
    pub aux_exponent: f64,
    pub majorant_exponent: f64,
    pub convergent: bool,
}

pub fn auxiliary_check(theta: &ThetaSpec, mu: f64, nu: f64, a: f64, b: f64) -> AuxCheck {
    if theta.is_zero() {
        return AuxCheck { aux_exponent: f64::INFINITY, majorant_exponent: f64::INFINITY, convergent: true };
    }
    let (n1, n2) = (1000.0f64, 2000.0f64);
    let slope = |f: &dyn Fn(f64) -> f64| -(f(n2) - f(n1)) / (n2 / n1).ln();
    let aux = slope(&|n| theta.ln_abs(n) - 2.0 / 3.0 * n.ln());
    let maj = slope(&|n| theta.ln_abs(n) - ((mu + a * n) * (nu + b * n)).ln() / 3.0);
    let ok = |p: f64| p.is_nan() || p > 1.05;
    AuxCheck { aux_exponent: aux, majorant_exponent: maj, convergent: ok(aux) && ok(maj) }
}

pub(crate) fn check_series(mu: f64, nu: f64, a: f64, b: f64) -> Result<()> {
    if ![mu, nu, a, b].iter().all(|v| v.is_finite()) {
        return domain("series parameters must be finite");
    }
    if !(a > 0.0 && b > 0.0) {
        return domain(format!("series steps must be positive, got a = {a}, b = {b}"));
    }
    if !(mu + a > 0.0 && nu + b > 0.0) {
        return domain(format!("min(μ+a, ν+b) must be positive, got {}", (mu + a).min(nu + b)));
    }
    Ok(())
}

/// Bound on `|J_{μ+an} J_{ν+bn}|`: the Landau bound `b_L s^{−1/3}` for
/// each factor, tightened by `(x/2)^s/Γ(s+1)` once the orders pass `−1/2`.
pub(super) fn product_bound(s1: f64, s2: f64, x: f64) -> f64 {
    let bl = landau_bound();
    let one = |s: f64| {
        let landau = if s > 0.0 { bl * s.powf(-1.0 / 3.0) } else { f64::INFINITY };
        let power = if s >= -0.5 { ln_power_bound(s, x).exp() } else { f64::INFINITY };
        landau.min(power).min(1.0)
    };
    one(s1) * one(s2)
}

/// Direct partial summation of `Σ_{n≥1} θ_n J_{μ+an}(x) J_{ν+bn}(x)`.
pub fn g_direct(mu: Order, nu: Order, a: f64, b: f64, theta: &ThetaSpec, x: f64, prec: &Precision) -> Result<Eval> {
    let (m, v) = (mu.value(), nu.value());
    check_series(m, v, a, b)?;
    if !(x > 0.0 && x <= CLI_MAX_ARG) {
        return domain(format!("x must lie in (0, {CLI_MAX_ARG}], got {x}"));
    }
    if theta.is_zero() {
        return Ok(Eval::new(0.0, 0.0, Method::PowerSeries));
    }
    let order = |n: usize| ((m + a * (n + 1) as f64), (v + b * (n + 1) as f64));
    let mut err = 0.0;
    let term = |n: usize| -> Result<f64> {
        let k = (n + 1) as f64;
        let t = theta.theta(k)?;
        if !t.is_finite() {
            return Err(Error::TailNotBounded(format!("θ_{k} overflows")));
        }
        let (s1, s2) = order(n);
        let (j1, j2) = (jx(s1, x)?, jx(s2, x)?);
        err += t.abs() * (j1.abs_err * j2.value.abs() + j2.abs_err * j1.value.abs());
        Ok(t * j1.value * j2.value)
    };
    let bound = |n: usize| {
        let (s1, s2) = order(n);
        (theta.ln_abs((n + 1) as f64).exp()) * product_bound(s1, s2, x)
    };
    let (sum, abs_sum, tail) = sum_with_tail(term, bound, 0.5 * prec.target_abs_err)?;
    let e = err + 4.0 * f64::EPSILON * abs_sum + tail;
    Ok(Eval::new(sum, e, Method::PowerSeries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turan::delta;

    fn o(v: f64) -> Order {
        Order::new(v).unwrap()
    }

    fn inst(s: &str) -> NeumannInstance {
        s.parse().unwrap()
    }

    fn direct(i: &NeumannInstance, x: f64) -> Eval {
        g_direct(o(i.mu), o(i.nu), i.a, i.b, &i.theta, x, &Precision::default()).unwrap()
    }

    #[test]
    fn tn_matches_delta_remainder() {
        let (nu, x) = (1.0, 2.0);
        let g = direct(&inst("tn10:nu=1"), x);
        let p = Precision::default();
        let d = delta(o(nu), x, &p).unwrap().value;
        let (j0, j1) = (jx(nu, x).unwrap().value, jx(nu + 1.0, x).unwrap().value);
        let want = d - j0 * j0 / (nu + 1.0) - 2.0 * j1 * j1 / (nu + 2.0);
        assert!((g.value - want).abs() < 1e-9, "{} vs {want}", g.value);
    }

    #[test]
    fn lommel_is_quarter_x_squared_delta() {
        let (nu, x) = (0.5, 1.5);
        let g = direct(&inst("lommel:nu=0.5"), x);
        let d = delta(o(nu), x, &Precision::default()).unwrap().value;
        assert!((g.value - x * x * d / 4.0).abs() < 1e-9);
    }

    #[test]
    fn alsalam_two_matches_finite_sum() {
        let (nu, x) = (0.7, 3.0);
        let g = direct(&inst("alsalam:m=2,nu=0.7"), x);
        let (s, _) = crate::turan::identity::salam_sum(nu, 2, x).unwrap();
        // m! (m−1)! / (4^m (2m)!) with m = 2
        let want = x.powi(4) * 2.0 / (16.0 * 24.0) * s;
        assert!((g.value - want).abs() < 1e-9, "{} vs {want}", g.value);
    }

    #[test]
    fn zero_theta_is_zero() {
        assert_eq!(direct(&inst("zero"), 1.0).value, 0.0);
    }

    #[test]
    fn rho_examples() {
        let c = ThetaSpec::new(ThetaExpr::Constant { c: 1.0 });
        let r = rho_estimate(&c, 1.0, 1.0, 200).unwrap();
        assert!(r.rho <= 1e-3 && !r.analytic);
        let fast = ThetaSpec::new(ThetaExpr::GammaQuotient(GammaQuotient {
            scale: 1.0,
            poly: vec![1.0],
            num: vec![(1.0, 1.0), (1.0, 3.0)],
            den: vec![],
        }));
        let r = rho_estimate(&fast, 1.0, 1.0, 200).unwrap();
        assert!(r.rho > 10.0 && r.unreliable);
        let mut tn = inst("tn10:nu=0.5").theta;
        tn.rho_analytic = None;
        let r = rho_estimate(&tn, 1.0, 1.0, 400).unwrap();
        assert!(r.rho < 1e-4 && !r.unreliable);
        assert_eq!(domain_interval(1.0, 1.0, 0.0).unwrap().hi, 2.0);
    }

    #[test]
    fn domain_examples() {
        assert_eq!(domain_interval(2.0, 3.0, 0.0).unwrap().hi, 2.0);
        let d = domain_interval(2.0, 2.0, 1.0).unwrap();
        assert!((d.hi - 4.0 / std::f64::consts::E).abs() < 1e-15);
        // a = b = 2: 2 (e⁴ρ)^{−1/4}
        for rho in [0.5, 3.0, 40.0] {
            let d = domain_interval(2.0, 2.0, rho).unwrap();
            let want = 2.0 * (2.0 * (std::f64::consts::E.powi(4) * rho).powf(-0.25)).min(1.0);
            assert!((d.hi - want).abs() < 1e-14);
        }
    }

    #[test]
    fn auxiliary_series_flags_agree_with_catalog() {
        for s in ["tn10:nu=0.5", "lommel:nu=0.5", "alsalam:m=2,nu=1", "const:c=1"] {
            let i = inst(s);
            let c = auxiliary_check(&i.theta, i.mu, i.nu, i.a, i.b);
            assert_eq!(c.convergent, i.theta.admissible, "{s}: {c:?}");
        }
    }

    #[test]
    fn growth_defeats_tail() {
        let fast = ThetaSpec::new(ThetaExpr::GammaQuotient(GammaQuotient {
            scale: 1.0,
            poly: vec![1.0],
            num: vec![(1.0, 4.0)],
            den: vec![],
        }));
        let e = g_direct(o(0.0), o(0.0), 1.0, 1.0, &fast, 30.0, &Precision::default());
        assert!(matches!(e, Err(Error::TailNotBounded(_))), "{e:?}");
    }
}
