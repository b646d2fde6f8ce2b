//! Relative extrema of `Δ_ν` and the critical points of `Φ_ν`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Range;
use crate::turan::delta::{delta, delta_prime, jx, phi_derivs};
use crate::types::{Order, Precision};
use crate::zeros::{zero, ZeroKind};

/// `M_{ν,n} = Δ_ν(j_{ν−1,n})` and `m_{ν,n} = Δ_ν(j_{ν+1,n})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extrema {
    pub nu: f64,
    pub n: u32,
    pub max_at: f64,
    pub max_value: f64,
    pub min_at: f64,
    pub min_value: f64,
    /// largest of `|Δ_ν(j) − J_ν²(j)|` at the two points
    pub value_residual: f64,
    /// `|Δ′_ν|` at both points
    pub slopes: (f64, f64),
}

/// Relative maximum and minimum of `Δ_ν` at the n-th zeros of `J_{ν∓1}`.
pub fn extrema(nu: Order, n: u32, prec: &Precision) -> Result<Extrema> {
    nu.require_gt(0.0, "Δ extrema")?;
    let o = nu.value();
    let a = zero(ZeroKind::JZero, Order::new(o - 1.0)?, n, prec)?.x;
    let b = zero(ZeroKind::JZero, Order::new(o + 1.0)?, n, prec)?.x;
    let (da, db) = (delta(nu, a, prec)?.value, delta(nu, b, prec)?.value);
    let (sa, sb) = (jx(o, a)?.value.powi(2), jx(o, b)?.value.powi(2));
    Ok(Extrema {
        nu: o,
        n,
        max_at: a,
        max_value: da,
        min_at: b,
        min_value: db,
        value_residual: (da - sa).abs().max((db - sb).abs()),
        slopes: (delta_prime(nu, a)?.value.abs(), delta_prime(nu, b)?.value.abs()),
    })
}

/// Observed monotonicity of `n ↦ M_{ν,n}` and `n ↦ m_{ν,n}` over a range of
/// orders.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityScan {
    pub n_max: u32,
    /// `(ν, maxima decreasing, minima decreasing)` per order
    pub rows: Vec<(f64, bool, bool)>,
    /// Smallest scanned order from which every larger scanned order has
    /// both sequences decreasing.
    pub threshold: Option<f64>,
}

pub fn monotonicity_threshold(nus: &Range, n_max: u32, prec: &Precision) -> Result<MonotonicityScan> {
    let mut rows = Vec::new();
    for nu in nus.nodes() {
        let ex: Vec<Extrema> = (1..=n_max).map(|n| extrema(Order::new(nu)?, n, prec)).collect::<Result<_>>()?;
        let dec_max = ex.windows(2).all(|w| w[1].max_value < w[0].max_value);
        let dec_min = ex.windows(2).all(|w| w[1].min_value < w[0].min_value);
        rows.push((nu, dec_max, dec_min));
    }
    let mut threshold = None;
    for &(nu, a, b) in rows.iter().rev() {
        if !(a && b) {
            break;
        }
        threshold = Some(nu);
    }
    Ok(MonotonicityScan { n_max, rows, threshold })
}

/// Critical points `α_{ν,n}` of `Φ_ν` and the values `β_{ν,n} = Φ_ν(α_{ν,n})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRecord {
    pub nu: Order,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub beta0: f64,
    pub monotone_increasing: bool,
    pub betas_below_one: bool,
    /// Brackets with no or several sign changes of `Φ′`.
    pub anomalies: Vec<String>,
}

const SCAN_CELLS: usize = 64;

/// Root of `Φ′_ν` in `(a, b)` by bisection polished with Newton on `Φ″`.
fn critical_point(o: f64, a: f64, b: f64) -> Result<(f64, usize)> {
    let d = |x: f64| -> Result<f64> { Ok(phi_derivs(o, x)?.1) };
    let h = (b - a) / SCAN_CELLS as f64;
    let mut changes = Vec::new();
    let mut prev = d(a)?;
    for i in 1..=SCAN_CELLS {
        let x = if i == SCAN_CELLS { b } else { a + h * i as f64 };
        let f = d(x)?;
        if (prev < 0.0) != (f < 0.0) {
            changes.push((x - h, x));
        }
        prev = f;
    }
    let Some(&(mut lo, mut hi)) = changes.first() else {
        return Err(Error::RootNotBracketed(format!("Φ′_{o} keeps its sign on ({a}, {b})")));
    };
    let mut f_lo = d(lo)?;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo < 1e-9 * hi {
            break;
        }
        let f = d(mid)?;
        if (f < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let (_, f1, f2) = phi_derivs(o, x)?;
        let step = f1 / f2;
        if !step.is_finite() {
            break;
        }
        let next = x - step;
        if !(next > lo - (hi - lo) && next < hi + (hi - lo)) {
            break;
        }
        x = next;
    }
    Ok((x, changes.len()))
}

/// Locates `α_{ν,n} ∈ (j_{ν+1,n}, j_{ν−1,n+1})` for `n = 1..=n_max`.
pub fn conjecture_explore(nu: Order, n_max: u32, prec: &Precision) -> Result<ConjectureRecord> {
    nu.require_gt(0.0, "conjecture explorer")?;
    if n_max == 0 || n_max > 20 {
        return crate::error::domain(format!("n_max must lie in 1..=20, got {n_max}"));
    }
    let o = nu.value();
    let up = Order::new(o + 1.0)?;
    let down = Order::new(o - 1.0)?;
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut anomalies = Vec::new();
    for n in 1..=n_max {
        let a = zero(ZeroKind::JZero, up, n, prec)?.x;
        let b = zero(ZeroKind::JZero, down, n + 1, prec)?.x;
        match critical_point(o, a, b) {
            Ok((x, changes)) => {
                if changes > 1 {
                    anomalies.push(format!("n = {n}: {changes} sign changes of Φ′, smallest root taken"));
                }
                alphas.push(x);
                betas.push(phi_derivs(o, x)?.0);
            }
            Err(e @ Error::RootNotBracketed(_)) => anomalies.push(format!("n = {n}: {e}")),
            Err(e) => return Err(e),
        }
    }
    let beta0 = 1.0 / (o + 1.0);
    let monotone_increasing =
        betas.first().map_or(true, |&b| b > beta0) && betas.windows(2).all(|w| w[1] > w[0]);
    let betas_below_one = betas.iter().all(|&b| b < 1.0);
    Ok(ConjectureRecord { nu, alphas, betas, beta0, monotone_increasing, betas_below_one, anomalies })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn extrema_identities() {
        let p = Precision::default();
        let e = extrema(o(1.0), 1, &p).unwrap();
        assert!(e.value_residual < 1e-10);
        assert!(e.max_value > e.min_value && e.min_value > 0.0);
        let e = extrema(o(2.0), 1, &p).unwrap();
        assert!(e.slopes.0 < 1e-9 && e.slopes.1 < 1e-9);
        assert!(extrema(o(0.0), 1, &p).is_err());
    }

    #[test]
    fn conjecture_anchors() {
        let p = Precision::default();
        let r = conjecture_explore(o(2.0), 4, &p).unwrap();
        let want = [6.690090363, 9.965082278, 13.1685359, 16.3465786];
        for (a, w) in r.alphas.iter().zip(want) {
            assert!((a - w).abs() < 1e-6, "{a} vs {w}");
        }
        assert!((r.beta0 - 1.0 / 3.0).abs() < 1e-16);
        assert!(r.monotone_increasing && r.betas_below_one && r.anomalies.is_empty());
        assert!((r.alphas[0] - 6.706133194).abs() > 1e-3);
    }

    #[test]
    fn monotonicity_scan_reports_rows() {
        let p = Precision::default();
        let s = monotonicity_threshold(&"1:3:3".parse().unwrap(), 4, &p).unwrap();
        assert_eq!(s.rows.len(), 3);
    }
}
