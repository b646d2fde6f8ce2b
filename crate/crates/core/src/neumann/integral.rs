//! The double-integral representation of a second-kind Neumann series and
//! the condensed Euler–Maclaurin operator it rests on.
//!
//! With `F(u) = Γ(μ+au+1)Γ(ν+bu+1) J_{μ+au}(x) J_{ν+bu}(x)` and
//! `W(v) = θ(v) / (Γ(μ+av+1)Γ(ν+bv+1))`,
//!
//! `𝔊(x) = −∫₁^∞ F′(u) ∫₀^{[u]} (W(v) + {v} W′(v)) dv du`.
//!
//! On `[N, N+1)` the inner integral is the constant `S(N) = Σ_{k≤N} W(k)`,
//! so each outer panel is smooth; summation by parts shows the whole is
//! `Σ_N W(N) F(N) = Σ_N θ_N J_{μ+aN} J_{ν+bN}`.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{auxiliary_check, check_series, domain_interval, product_bound, rho_estimate, ThetaSpec};
use crate::bessel::bessel_j_dnu;
use crate::error::{domain, Error, Result};
use crate::gamma::{digamma_any, ln_gamma_signed, rgamma};
use crate::turan::jx;
use crate::types::{Eval, Method, Order, Precision};

const EPS: f64 = f64::EPSILON;
const MAX_SPLIT_DEPTH: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub u_max: f64,
    pub u_nodes: usize,
    pub v_nodes: usize,
    /// order step handed to the `∂J/∂ν` difference quotient
    pub du_step: f64,
    pub target: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { u_max: 60.0, u_nodes: 16, v_nodes: 16, du_step: 1e-3, target: 1e-10 }
    }
}

impl QuadConfig {
    pub fn new(u_max: f64, u_nodes: usize, v_nodes: usize, du_step: f64, target: f64) -> Result<Self> {
        let q = QuadConfig { u_max, u_nodes, v_nodes, du_step, target };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.u_max >= 2.0 && self.u_max <= 60.0) {
            return domain(format!("u_max must lie in [2, 60], got {}", self.u_max));
        }
        if self.u_nodes < 8 || self.v_nodes < 8 {
            return domain(format!("node counts must be at least 8, got {} and {}", self.u_nodes, self.v_nodes));
        }
        if !(1e-6..=1e-2).contains(&self.du_step) {
            return domain(format!("du_step must lie in [1e-6, 1e-2], got {}", self.du_step));
        }
        if !(self.target > 0.0 && self.target < 1.0) {
            return domain(format!("target must lie in (0, 1), got {}", self.target));
        }
        Ok(())
    }
}

fn rule(n: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n.max(1)).unwrap_or(NonZeroUsize::MIN);
    GaussLegendre::new(n).as_node_weight_pairs().to_vec()
}

/// Gauss–Legendre on `[lo, hi]` of a fallible integrand returning a value
/// and its error; the errors are integrated alongside.
fn integrate(r: &[(f64, f64)], lo: f64, hi: f64, f: &impl Fn(f64) -> Result<(f64, f64)>) -> Result<(f64, f64)> {
    let (c, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    let mut s = 0.0;
    let mut e = 0.0;
    for &(t, w) in r {
        let (v, ve) = f(c + h * t)?;
        s += w * v;
        e += w * ve;
    }
    Ok((s * h, e * h.abs()))
}

/// Integrates `f` over `[lo, hi]`, splitting into `2^d` equal pieces until
/// the result is within `tol` of the known `exact` value.
fn checked(
    r: &[(f64, f64)],
    lo: f64,
    hi: f64,
    exact: (f64, f64),
    tol: f64,
    f: &impl Fn(f64) -> Result<(f64, f64)>,
) -> Result<(f64, f64)> {
    let mut best = f64::INFINITY;
    for depth in 0..=MAX_SPLIT_DEPTH {
        let pieces = 1usize << depth;
        let h = (hi - lo) / pieces as f64;
        let mut s = Vec::with_capacity(pieces);
        let mut e = 0.0;
        for i in 0..pieces {
            let (v, ve) = integrate(r, lo + h * i as f64, lo + h * (i + 1) as f64, f)?;
            s.push(v);
            e += ve;
        }
        let q = pairwise(&s);
        let diff = (q - exact.0).abs();
        let floor = 4.0 * (e + exact.1) + 8.0 * EPS * q.abs();
        if diff <= tol.max(floor) {
            return Ok((q, diff.max(e)));
        }
        if diff >= best {
            break;
        }
        best = diff;
    }
    Err(Error::QuadratureStalled(format!("panel [{lo}, {hi}] stopped improving at {best:e}")))
}

pub(crate) fn pairwise(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    pairwise(l) + pairwise(r)
}

/// `sign(v) · Γ(s+1) · |v|`, formed in logs.
fn gamma_times(s: f64, v: f64) -> Result<f64> {
    if v == 0.0 {
        return Ok(0.0);
    }
    let Some((sg, lg)) = ln_gamma_signed(s + 1.0) else {
        return Err(Error::NearPole(format!("Γ({}) is a pole", s + 1.0)));
    };
    Ok(sg * v.signum() * (lg + v.abs().ln()).exp())
}

struct Kernel<'a> {
    mu: f64,
    nu: f64,
    a: f64,
    b: f64,
    x: f64,
    h: f64,
    theta: &'a ThetaSpec,
}

impl Kernel<'_> {
    /// `W(v)` and `W′(v)`.
    fn w(&self, v: f64) -> Result<(f64, f64)> {
        let (s1, s2) = (self.mu + self.a * v + 1.0, self.nu + self.b * v + 1.0);
        let t = self.theta.theta(v)?;
        let dt = self.theta.theta_prime(v)?;
        let r = rgamma(s1) * rgamma(s2);
        let psi = self.a * digamma_any(s1) + self.b * digamma_any(s2);
        let dw = (dt - t * psi) * r;
        if !dw.is_finite() {
            return Err(Error::NearPole(format!("weight derivative is not finite at v = {v}")));
        }
        Ok((t * r, dw))
    }

    /// `Γ(s+1) J_s(x)` with its error.
    fn gj(&self, s: f64) -> Result<(f64, f64)> {
        let j = jx(s, self.x)?;
        Ok((gamma_times(s, j.value)?, gamma_times(s, j.abs_err)?.abs()))
    }

    fn gd(&self, s: f64) -> Result<(f64, f64)> {
        let d = bessel_j_dnu(Order::new(s)?, self.x, self.h)?;
        Ok((gamma_times(s, d.value)?, gamma_times(s, d.abs_err)?.abs()))
    }

    fn f(&self, u: f64) -> Result<(f64, f64)> {
        let (g1, e1) = self.gj(self.mu + self.a * u)?;
        let (g2, e2) = self.gj(self.nu + self.b * u)?;
        let v = g1 * g2;
        Ok((v, e1 * g2.abs() + e2 * g1.abs() + EPS * v.abs()))
    }

    /// `F′(u)` by the product rule, `∂Γ(s+1)/∂s = Γ(s+1)ψ(s+1)`.
    fn df(&self, u: f64) -> Result<(f64, f64)> {
        let (s1, s2) = (self.mu + self.a * u, self.nu + self.b * u);
        let ((g1, e1), (g2, e2)) = (self.gj(s1)?, self.gj(s2)?);
        let ((d1, f1), (d2, f2)) = (self.gd(s1)?, self.gd(s2)?);
        let psi = self.a * digamma_any(s1 + 1.0) + self.b * digamma_any(s2 + 1.0);
        let terms = [g1 * g2 * psi, self.a * d1 * g2, self.b * g1 * d2];
        let v = terms.iter().sum::<f64>();
        let e = psi.abs() * (e1 * g2.abs() + e2 * g1.abs())
            + self.a * (f1 * g2.abs() + d1.abs() * e2)
            + self.b * (e1 * d2.abs() + g1.abs() * f2)
            + 4.0 * EPS * terms.iter().map(|t| t.abs()).sum::<f64>();
        Ok((v, e))
    }

    /// Majorant of `Σ_{n>m} |θ_n J_{μ+an} J_{ν+bn}|`.
    fn series_tail(&self, m: usize) -> f64 {
        let mut s = 0.0;
        for n in m + 1..m + 20000 {
            let k = n as f64;
            let t = self.theta.ln_abs(k).exp() * product_bound(self.mu + self.a * k, self.nu + self.b * k, self.x);
            s += t;
            if t < 1e-3 * EPS * s || t < 1e-300 {
                return s;
            }
        }
        f64::INFINITY
    }

    /// `(x/2)^{μ+ν+(a+b)u} ≥ |F(u)|` for orders at least −1/2.
    fn f_bound(&self, u: f64) -> f64 {
        ((self.mu + self.nu + (self.a + self.b) * u) * (0.5 * self.x).ln()).exp()
    }
}

/// `𝔊(x)` through the double-integral representation.
#[allow(clippy::too_many_arguments)]
pub fn g_integral(
    mu: Order,
    nu: Order,
    a: f64,
    b: f64,
    theta: &ThetaSpec,
    x: f64,
    quad: &QuadConfig,
    prec: &Precision,
) -> Result<Eval> {
    let (m, v) = (mu.value(), nu.value());
    check_series(m, v, a, b)?;
    quad.validate()?;
    let rho = rho_estimate(theta, a, b, 200)?;
    let dom = domain_interval(a, b, rho.rho)?;
    if !dom.contains(x) {
        return domain(format!("x = {x} lies outside the convergence interval (0, {})", dom.hi));
    }
    if theta.is_zero() {
        return Ok(Eval::new(0.0, 0.0, Method::PowerSeries));
    }
    if !auxiliary_check(theta, m, v, a, b).convergent {
        return domain(format!("θ = {} fails the absolute-convergence hypothesis", theta.name));
    }
    let target = quad.target.min(prec.target_abs_err);
    let k = Kernel { mu: m, nu: v, a, b, x, h: quad.du_step, theta };
    let panels = (quad.u_max.floor() as usize).saturating_sub(1).max(1);

    // inner unit panels: ∫_{k−1}^{k} (W + {v}W′) = W(k)
    let vr = rule(quad.v_nodes);
    let inner: Vec<(f64, f64)> = (1..=panels + 1)
        .into_par_iter()
        .map(|j| -> Result<(f64, f64)> {
            let left = (j - 1) as f64;
            let (wj, _) = k.w(j as f64)?;
            let f = |t: f64| -> Result<(f64, f64)> {
                let (w, dw) = k.w(t)?;
                let g = w + (t - left) * dw;
                Ok((g, 4.0 * EPS * (w.abs() + dw.abs())))
            };
            checked(&vr, left, j as f64, (wj, EPS * wj.abs()), 0.1 * target / panels as f64, &f)
        })
        .collect::<Result<_>>()?;
    let mut s = Vec::with_capacity(inner.len());
    let (mut acc, mut acc_e) = (Vec::new(), 0.0);
    for &(p, e) in &inner {
        acc.push(p);
        acc_e += e;
        s.push((pairwise(&acc), acc_e));
    }

    // smallest U whose remainder S(U+1)F(U+1) + Σ_{n>U+1} θ_n J J is below target/10
    let tail_after = |u: usize| s[u].0.abs() * k.f_bound((u + 1) as f64) + k.series_tail(u + 1);
    let mut upto = panels;
    for u in 1..=panels {
        if tail_after(u) < 0.1 * target {
            upto = u;
            break;
        }
    }
    let tail = tail_after(upto);

    let ur = rule(quad.u_nodes);
    let outer: Vec<(f64, f64)> = (1..=upto)
        .into_par_iter()
        .map(|n| -> Result<(f64, f64)> {
            let (lo, hi) = (n as f64, (n + 1) as f64);
            let (fa, ea) = k.f(lo)?;
            let (fb, eb) = k.f(hi)?;
            checked(&ur, lo, hi, (fb - fa, ea + eb), 0.1 * target / upto as f64, &|u| k.df(u))
        })
        .collect::<Result<_>>()?;
    let terms: Vec<f64> = outer.iter().zip(&s).map(|(&(q, _), &(sn, _))| -sn * q).collect();
    let value = pairwise(&terms);
    let err = outer.iter().zip(&s).map(|(&(q, qe), &(sn, se))| sn.abs() * qe + q.abs() * se).sum::<f64>()
        + tail
        + 4.0 * EPS * terms.iter().map(|t| t.abs()).sum::<f64>();
    Ok(Eval::new(value, err, Method::PowerSeries))
}

/// A continuously differentiable function for the condensed
/// Euler–Maclaurin check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SmoothFn {
    /// ascending coefficients
    Polynomial(Vec<f64>),
    /// `scale · e^{rate·x}`
    Exponential { scale: f64, rate: f64 },
    Theta(ThetaSpec),
}

impl SmoothFn {
    fn eval(&self, x: f64) -> Result<(f64, f64)> {
        match self {
            SmoothFn::Polynomial(c) => {
                let (mut p, mut dp) = (0.0, 0.0);
                for &ci in c.iter().rev() {
                    dp = dp * x + p;
                    p = p * x + ci;
                }
                Ok((p, dp))
            }
            SmoothFn::Exponential { scale, rate } => {
                let e = scale * (rate * x).exp();
                Ok((e, rate * e))
            }
            SmoothFn::Theta(t) => Ok((t.theta(x)?, t.theta_prime(x)?)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmCheck {
    pub sum: f64,
    pub integral: f64,
    /// `|sum − integral| / max(1, |sum|)`
    pub residual: f64,
}

/// `Σ_{j=k+1}^{m} f(j)` against `∫_k^m (f + {x} f′) dx`, the integral taken
/// panel by panel between consecutive integers.
pub fn euler_maclaurin_condensed(f: &SmoothFn, k: i64, m: i64, quad: &QuadConfig) -> Result<EmCheck> {
    if k >= m {
        return domain(format!("need k < m, got {k} and {m}"));
    }
    if m - k > 100_000 {
        return domain("at most 100000 unit panels");
    }
    let r = rule(quad.v_nodes);
    let mut sums = Vec::new();
    let mut panels = Vec::new();
    for j in k..m {
        let left = j as f64;
        sums.push(f.eval((j + 1) as f64)?.0);
        let g = |t: f64| -> Result<(f64, f64)> {
            let (v, d) = f.eval(t)?;
            Ok((v + (t - left) * d, 0.0))
        };
        panels.push(integrate(&r, left, left + 1.0, &g)?.0);
    }
    let (sum, integral) = (pairwise(&sums), pairwise(&panels));
    Ok(EmCheck { sum, integral, residual: (sum - integral).abs() / sum.abs().max(1.0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neumann::{g_direct, NeumannInstance};

    fn o(v: f64) -> Order {
        Order::new(v).unwrap()
    }

    fn both(i: &NeumannInstance, x: f64, q: &QuadConfig) -> (Eval, Eval) {
        let p = Precision::default();
        let d = g_direct(o(i.mu), o(i.nu), i.a, i.b, &i.theta, x, &p).unwrap();
        let g = g_integral(o(i.mu), o(i.nu), i.a, i.b, &i.theta, x, q, &p).unwrap();
        (d, g)
    }

    #[test]
    fn tn10_integral_matches_direct() {
        let i: NeumannInstance = "tn10:nu=0.5".parse().unwrap();
        let (d, g) = both(&i, 0.5, &QuadConfig::default());
        assert!((d.value - g.value).abs() < 1e-10, "{} vs {}", d.value, g.value);
        assert!(g.abs_err < 1e-8);
    }

    #[test]
    fn halving_step_moves_less_than_error() {
        let i: NeumannInstance = "tn10:nu=0.5".parse().unwrap();
        assert_eq!((i.mu, i.nu, i.a, i.b), (1.5, 1.5, 1.0, 1.0));
        let q = QuadConfig::default();
        let (_, g1) = both(&i, 0.5, &q);
        let (_, g2) = both(&i, 0.5, &QuadConfig { du_step: q.du_step / 2.0, ..q });
        assert!((g1.value - g2.value).abs() < g1.abs_err.max(g2.abs_err));
    }

    #[test]
    fn zero_theta_and_domain() {
        let z: NeumannInstance = "zero:nu=1".parse().unwrap();
        let p = Precision::default();
        let q = QuadConfig::default();
        assert_eq!(g_integral(o(1.0), o(1.0), 1.0, 1.0, &z.theta, 0.5, &q, &p).unwrap().value, 0.0);
        let t: NeumannInstance = "tn10:nu=1".parse().unwrap();
        assert!(g_integral(o(t.mu), o(t.nu), 1.0, 1.0, &t.theta, 2.5, &q, &p).is_err());
        let l: NeumannInstance = "lommel:nu=1".parse().unwrap();
        assert!(g_integral(o(l.mu), o(l.nu), 2.0, 2.0, &l.theta, 0.5, &q, &p).is_err());
    }

    #[test]
    fn quad_config_invariants() {
        assert!(QuadConfig::new(61.0, 16, 16, 1e-3, 1e-10).is_err());
        assert!(QuadConfig::new(30.0, 4, 16, 1e-3, 1e-10).is_err());
        assert!(QuadConfig::new(30.0, 16, 16, 1e-1, 1e-10).is_err());
        assert!(QuadConfig::new(30.0, 16, 16, 1e-4, 1e-10).is_ok());
    }

    #[test]
    fn em_examples() {
        let q = QuadConfig::default();
        let c = euler_maclaurin_condensed(&SmoothFn::Polynomial(vec![0.0, 0.0, 1.0]), 0, 3, &q).unwrap();
        assert_eq!(c.sum, 14.0);
        assert!((c.integral - 14.0).abs() <= 1e-12);
        let c = euler_maclaurin_condensed(&SmoothFn::Polynomial(vec![2.5]), -3, 4, &q).unwrap();
        assert!(c.residual <= 1e-13 && c.sum == 17.5);
        let q64 = QuadConfig { v_nodes: 64, ..q };
        let c = euler_maclaurin_condensed(&SmoothFn::Exponential { scale: 1.0, rate: 1.0 }, 1, 5, &q64).unwrap();
        assert!(c.residual <= 1e-9);
        assert!(euler_maclaurin_condensed(&SmoothFn::Polynomial(vec![1.0]), 3, 3, &q).is_err());
    }
}
