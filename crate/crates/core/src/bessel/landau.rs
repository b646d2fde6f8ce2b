//! The uniform bound `|J_ν(x)| ≤ b_L ν^{−1/3}` for `ν > 0`, `x ∈ ℝ`, with
//! `b_L = 2^{1/3} sup_t Ai(t)`.
//!
//! The supremum of `Ai` over the whole line sits near `t ≈ −1.0188` (`b_L ≈ 0.674885`); Ai is
//! decreasing on `[0, ∞)`, so its supremum there is `Ai(0)`. Both constants
//! are reported; the bound uses the global one.

use serde::{Deserialize, Serialize};

use crate::bessel::j::j_eval;
use crate::error::Result;
use crate::gamma::gamma;
use crate::types::Order;

/// Ai(t) from its Maclaurin series; accurate to ~1e-15 on `|t| ≤ 4`.
pub fn airy_ai(t: f64) -> f64 {
    let c1 = 3f64.powf(-2.0 / 3.0) / gamma(2.0 / 3.0);
    let c2 = 3f64.powf(-1.0 / 3.0) / gamma(1.0 / 3.0);
    let t3 = t * t * t;
    let (mut f, mut g) = (1.0, t);
    let (mut u, mut v) = (1.0, t);
    for k in 1..80 {
        let k3 = 3.0 * k as f64;
        u *= t3 / ((k3 - 1.0) * k3);
        v *= t3 / (k3 * (k3 + 1.0));
        f += u;
        g += v;
        if u.abs() + v.abs() < 1e-18 * (f.abs() + g.abs()) {
            break;
        }
    }
    c1 * f - c2 * g
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - r * (hi - lo);
    let mut b = lo + r * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > 1e-12 {
        if fa > fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = f(b);
        }
    }
    let t = 0.5 * (lo + hi);
    (t, f(t))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandauConstants {
    /// `2^{1/3} max_t Ai(t)`, used by [`landau_bound`].
    pub global: f64,
    /// Location of the global maximum of Ai.
    pub argmax: f64,
    /// `2^{1/3} Ai(0)`, the supremum over `t ≥ 0` only.
    pub positive_axis: f64,
}

pub fn landau_constants() -> LandauConstants {
    let (argmax, max) = golden_max(airy_ai, -3.0, 0.0);
    let (_, pos) = golden_max(airy_ai, 0.0, 4.0);
    let cbrt2 = 2f64.cbrt();
    LandauConstants { global: cbrt2 * max, argmax, positive_axis: cbrt2 * pos.max(airy_ai(0.0)) }
}

/// `b_L` for the uniform bound.
pub fn landau_bound() -> f64 {
    landau_constants().global
}

/// `b_L ν^{−1/3} − |J_ν(x)|`; non-negative wherever the bound holds.
pub fn landau_margin(nu: Order, x: f64) -> Result<f64> {
    nu.require_gt(0.0, "Landau bound")?;
    let j = j_eval(nu.value(), x.abs())?;
    Ok(landau_bound() * nu.value().powf(-1.0 / 3.0) - j.value.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn airy_reference_values() {
        assert!((airy_ai(0.0) - 0.355_028_053_887_817_2).abs() < 1e-15);
        assert!((airy_ai(1.0) - 0.135_292_416_312_881_4).abs() < 1e-14);
        assert!((airy_ai(-2.0) - 0.227_407_428_201_685_6).abs() < 1e-14);
    }

    #[test]
    fn constants() {
        let c = landau_constants();
        assert!((c.argmax + 1.018_792_971_647_471).abs() < 1e-6);
        assert!((c.global - 0.674_885_096_430_477_5).abs() < 1e-12, "{}", c.global);
        assert!((c.positive_axis - 2f64.cbrt() * airy_ai(0.0)).abs() < 1e-15);
    }

    #[test]
    fn bound_holds_on_samples() {
        for &nu in &[0.5, 1.0, 3.0, 10.0] {
            for i in 0..200 {
                let x = 0.2 * i as f64;
                assert!(landau_margin(Order::new(nu).unwrap(), x).unwrap() > 0.0);
            }
        }
    }
}
