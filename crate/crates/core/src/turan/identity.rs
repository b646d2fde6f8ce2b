//! Closed-form identities for Turán-type expressions, evaluated side by side.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::gamma::{ln_gamma_signed, pochhammer};
use crate::turan::jx;
use crate::types::{Order, Precision};

/// Identity selector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum IdentityId {
    /// `(x²/4) Δ_ν(x) = Σ_{n≥0} (ν+1+2n) J²_{ν+1+2n}(x)`
    Lommel,
    /// Squared-sum representation of `Σ_n (−1)^n C(2m, m−n) J_{ν−n} J_{ν+n}`.
    AlSalam(u8),
    /// `νJ_ν² − (ν+1)J_{ν−1}J_{ν+1} = J²_{ν+1} + ν(J²_{ν+1} − J_ν J_{ν+2})`
    Turan3,
    /// `Δ_ν = J²_ν/(ν+1) + 2J²_{ν+1}/(ν+2) + 2ν Σ_{n≥2} J²_{ν+n}/((ν+n−1)(ν+n+1))`
    Turan4,
    /// `t^ν (t² − 2st)^{−ν/2} J_ν(√(t² − 2st)) = Σ_n J_{ν+n}(t) s^n / n!`,
    /// evaluated at `t = x`.
    BesselGf { shift: f64 },
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityId::Lommel => write!(f, "lommel"),
            IdentityId::AlSalam(m) => write!(f, "alsalam:{m}"),
            IdentityId::Turan3 => write!(f, "turan3"),
            IdentityId::Turan4 => write!(f, "turan4"),
            IdentityId::BesselGf { shift } => write!(f, "besselgf:{shift}"),
        }
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h.to_string(), Some(a.to_string())),
            None => (s.clone(), None),
        };
        let bad = || Error::Parse(format!("unknown identity {s:?}"));
        match (head.as_str(), arg) {
            ("lommel", None) => Ok(IdentityId::Lommel),
            ("turan3", None) => Ok(IdentityId::Turan3),
            ("turan4", None) => Ok(IdentityId::Turan4),
            ("alsalam", Some(a)) => {
                let m: u8 = a.parse().map_err(|_| bad())?;
                if m > 6 {
                    return Err(Error::Parse(format!("alsalam index {m} exceeds 6")));
                }
                Ok(IdentityId::AlSalam(m))
            }
            ("besselgf", Some(a)) => {
                let shift: f64 = a.parse().map_err(|_| bad())?;
                if !shift.is_finite() {
                    return Err(bad());
                }
                Ok(IdentityId::BesselGf { shift })
            }
            _ => Err(bad()),
        }
    }
}

/// `ln((x/2)^s / Γ(s+1))`, the log of the bound `|J_s(x)| ≤ (x/2)^s/Γ(s+1)`
/// valid for `s ≥ −1/2`.
pub(crate) fn ln_power_bound(s: f64, x: f64) -> f64 {
    let lg = ln_gamma_signed(s + 1.0).map_or(f64::INFINITY, |(_, l)| l);
    s * (0.5 * x.abs()).ln() - lg
}

/// Sums `term(n)` for n = 0, 1, … until the bound `bound(n)` on `|term(n)|`
/// is below `tol` and has started halving, so the tail is at most twice the
/// next bound. Returns the sum and that tail bound.
pub(crate) fn sum_with_tail(
    mut term: impl FnMut(usize) -> Result<f64>,
    bound: impl Fn(usize) -> f64,
    tol: f64,
) -> Result<(f64, f64, f64)> {
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    for n in 0..4000 {
        let t = term(n)?;
        sum += t;
        abs_sum += t.abs();
        let (b0, b1) = (bound(n), bound(n + 1));
        if b1 <= tol && b1 <= 0.5 * b0 {
            return Ok((sum, abs_sum, 2.0 * b1));
        }
    }
    Err(Error::TailNotBounded("series terms did not fall below the tail tolerance".into()))
}

fn j(order: f64, x: f64) -> Result<f64> {
    Ok(jx(order, x)?.value)
}

fn scaled(lhs: f64, rhs: f64, scale: f64) -> f64 {
    (lhs - rhs).abs() / scale.max(lhs.abs()).max(rhs.abs()).max(1.0)
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `Σ_{n=−m}^{m} (−1)^n C(2m, m−n) J_{ν−n} J_{ν+n}` with an error scale.
pub(crate) fn salam_sum(o: f64, m: u32, x: f64) -> Result<(f64, f64)> {
    let mut sum = 0.0;
    let mut abs = 0.0;
    for n in -(m as i32)..=(m as i32) {
        let c = binom(2 * m, (m as i32 - n) as u32) * if n % 2 == 0 { 1.0 } else { -1.0 };
        let t = c * j(o - n as f64, x)? * j(o + n as f64, x)?;
        sum += t;
        abs += t.abs();
    }
    Ok((sum, abs))
}

/// Residual `|LHS − RHS| / max(1, |LHS|, |RHS|)` of the selected identity.
pub fn identity_residual(id: IdentityId, nu: Order, x: f64, prec: &Precision) -> Result<f64> {
    nu.require_gt(-1.0, "identity")?;
    let o = nu.value();
    if !(x > 0.0) {
        return domain(format!("identities are checked at x > 0, got {x}"));
    }
    let tol = 1e-3 * prec.target_abs_err.min(1e-14);
    match id {
        IdentityId::Lommel => {
            let lhs = x * x / 4.0 * (j(o, x)?.powi(2) - j(o - 1.0, x)? * j(o + 1.0, x)?);
            let s = |n: usize| o + 1.0 + 2.0 * n as f64;
            let (rhs, abs, _) = sum_with_tail(
                |n| Ok(s(n) * j(s(n), x)?.powi(2)),
                |n| s(n) * (2.0 * ln_power_bound(s(n), x)).exp(),
                tol,
            )?;
            Ok(scaled(lhs, rhs, abs))
        }
        IdentityId::Turan3 => {
            let (jm, j0, j1, j2) = (j(o - 1.0, x)?, j(o, x)?, j(o + 1.0, x)?, j(o + 2.0, x)?);
            let lhs = o * j0 * j0 - (o + 1.0) * jm * j1;
            let rhs = j1 * j1 + o * (j1 * j1 - j0 * j2);
            Ok(scaled(lhs, rhs, (o * j0 * j0).abs() + ((o + 1.0) * jm * j1).abs()))
        }
        IdentityId::Turan4 => {
            let (jm, j0, j1) = (j(o - 1.0, x)?, j(o, x)?, j(o + 1.0, x)?);
            let lhs = j0 * j0 - jm * j1;
            let head = j0 * j0 / (o + 1.0) + 2.0 * j1 * j1 / (o + 2.0);
            let w = |n: usize| {
                let n = n as f64 + 2.0;
                1.0 / ((o + n - 1.0) * (o + n + 1.0))
            };
            let (tail, abs, _) = sum_with_tail(
                |n| Ok(w(n) * j(o + n as f64 + 2.0, x)?.powi(2)),
                |n| w(n) * (2.0 * ln_power_bound(o + n as f64 + 2.0, x)).exp(),
                tol,
            )?;
            let rhs = head + 2.0 * o * tail;
            Ok(scaled(lhs, rhs, (j0 * j0).abs() + (jm * j1).abs() + head + 2.0 * o.abs() * abs))
        }
        IdentityId::AlSalam(m) => {
            let m = m as u32;
            if m > 6 {
                return domain(format!("AlSalam index {m} exceeds 6"));
            }
            let (lhs, lhs_abs) = salam_sum(o, m, x)?;
            if m == 0 {
                // The m = 0 case degenerates to J_ν² = J_ν².
                let rhs = j(o, x)?.powi(2);
                return Ok(scaled(lhs, rhs, lhs_abs));
            }
            let mf = m as f64;
            // 4^m (2m)! / (x^{2m} m! (m−1)!)
            let mut c = (4.0 / (x * x)).powi(m as i32);
            for i in 1..=(2 * m) {
                c *= i as f64;
            }
            for i in 1..=m {
                c /= i as f64;
            }
            for i in 1..m {
                c /= i as f64;
            }
            let coef = |k: usize| {
                let kf = k as f64;
                (o + mf + 2.0 * kf) * pochhammer(kf + 1.0, m - 1) * pochhammer(o + kf + 1.0, m - 1)
            };
            let order = |k: usize| o + mf + 2.0 * k as f64;
            let (rhs, abs, _) = sum_with_tail(
                |k| Ok(c * coef(k) * j(order(k), x)?.powi(2)),
                |k| c * coef(k).abs() * (2.0 * ln_power_bound(order(k), x)).exp(),
                tol,
            )?;
            Ok(scaled(lhs, rhs, lhs_abs.max(abs)))
        }
        IdentityId::BesselGf { shift } => {
            let w2 = x * x - 2.0 * shift * x;
            if !(w2 > 0.0) {
                return domain(format!("generating function needs t² − 2st > 0, got {w2}"));
            }
            let w = w2.sqrt();
            let lhs = (x / w).powf(o) * j(o, w)?;
            let ln_fact = |n: usize| (1..=n).map(|i| (i as f64).ln()).sum::<f64>();
            let (rhs, abs, _) = sum_with_tail(
                |n| Ok(j(o + n as f64, x)? * shift.powi(n as i32) * (-ln_fact(n)).exp()),
                |n| {
                    let s = o + n as f64;
                    if s < -0.5 {
                        return f64::INFINITY;
                    }
                    (ln_power_bound(s, x) + n as f64 * shift.abs().ln() - ln_fact(n)).exp()
                },
                tol,
            )?;
            Ok(scaled(lhs, rhs, abs))
        }
    }
}
