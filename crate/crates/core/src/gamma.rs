//! Γ-family functions: ln Γ, Γ and 1/Γ on the real line, ψ, and the
//! Pochhammer symbol.
//!
//! Below [`STIRLING_CUTOFF`] Γ comes from the Taylor series of 1/Γ(1+t),
//! `|t| ≤ 1/2`, and the upward recurrence; above it from the Stirling series.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::types::{Eval, Method};

const STIRLING_CUTOFF: f64 = 30.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// B_{2k} / (2k (2k − 1)) for k = 1..=8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// B_{2k} / (2k) for k = 1..=7, used by the ψ asymptotic series.
const DIGAMMA_COEFFS: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

fn stirling_ln_gamma(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in STIRLING_COEFFS {
        corr += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + corr
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < STIRLING_CUTOFF {
        gamma(x).ln()
    } else {
        stirling_ln_gamma(x)
    }
}

/// ln Γ(x) for x > 0.
pub fn gamma_ln(x: f64) -> Result<Eval> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("gamma_ln requires x > 0, got {x}"));
    }
    let v = ln_gamma_pos(x);
    let err = 4.0 * f64::EPSILON * (v.abs() + 1.0);
    Ok(Eval::new(v, err, Method::Asymptotic))
}

/// sin(πx) with exact reduction of the argument; zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    if f == 0.0 {
        return 0.0;
    }
    let s = (PI * f).sin();
    if (n as i64).rem_euclid(2) == 1 {
        -s
    } else {
        s
    }
}

/// cos(πx) with exact reduction of the argument; zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    if f.abs() == 0.5 {
        return 0.0;
    }
    let c = (PI * f).cos();
    if (n as i64).rem_euclid(2) == 1 {
        -c
    } else {
        c
    }
}

/// Taylor coefficients of 1/Γ(1+t) = Σ_k RGAMMA_TAYLOR[k] t^k about t = 0.
const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_860_6,
    -0.655_878_071_520_253_881_1,
    -0.042_002_635_034_095_235_53,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_75,
    -0.009_621_971_527_876_973_562,
    0.007_218_943_246_663_099_542,
    -0.001_165_167_591_859_065_112,
    -0.000_215_241_674_114_950_972_8,
    0.000_128_050_282_388_116_186_2,
    -0.000_020_134_854_780_788_238_66,
    -0.000_001_250_493_482_142_670_657,
    0.000_001_133_027_231_981_695_882,
    -2.056_338_416_977_607_104e-7,
    6.116_095_104_481_415_818e-9,
    5.002_007_644_469_222_930e-9,
    -1.181_274_570_487_020_145e-9,
    1.043_426_711_691_100_510e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783e-14,
    -5.348_122_539_423_017_982e-15,
    1.226_778_628_238_260_790e-15,
    -1.181_259_301_697_458_770e-16,
];

/// Γ(1+t) for |t| ≤ 1/2.
fn gamma_near_one(t: f64) -> f64 {
    let r = RGAMMA_TAYLOR.iter().rev().fold(0.0, |acc, &c| acc * t + c);
    1.0 / r
}

/// Γ(x) for large x as x^{x−1/2} e^{−x} √(2π) e^{corr}, the power split in
/// two so it cannot overflow before the final product.
fn gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in STIRLING_COEFFS {
        corr += c * p;
        p *= inv2;
    }
    let half = x.powf(0.5 * (x - 0.5));
    half * ((-x).exp() * (2.0 * PI).sqrt() * corr.exp()) * half
}

/// Γ(x) on the real line; infinite at the poles 0, −1, −2, ….
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 {
        if x >= STIRLING_CUTOFF {
            return gamma_stirling(x);
        }
        // x = 1 + t + m with |t| ≤ 1/2
        let n = x.round();
        let t = x - n;
        let mut g = gamma_near_one(t);
        if n == 0.0 {
            return g / t;
        }
        let mut k = 1.0;
        while k < n {
            g *= t + k;
            k += 1.0;
        }
        g
    } else {
        let s = sin_pi(x);
        if s == 0.0 {
            return f64::INFINITY;
        }
        PI / (s * gamma(1.0 - x))
    }
}

/// 1/Γ(x), an entire function; exactly zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if x > 0.0 {
        if x > 171.0 {
            return (-ln_gamma_pos(x)).exp();
        }
        1.0 / gamma(x)
    } else {
        sin_pi(x) * gamma(1.0 - x) / PI
    }
}

/// Sign of Γ(x) and ln|Γ(x)|; `None` at poles.
pub(crate) fn ln_gamma_signed(x: f64) -> Option<(f64, f64)> {
    if x > 0.0 {
        return Some((1.0, ln_gamma_pos(x)));
    }
    let s = sin_pi(x);
    if s == 0.0 {
        return None;
    }
    // Γ(x) = π / (sin(πx) Γ(1−x))
    let ln = PI.ln() - s.abs().ln() - ln_gamma_pos(1.0 - x);
    Some((s.signum(), ln))
}

fn digamma_pos(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut p = inv2;
    let mut series = 0.0;
    for c in DIGAMMA_COEFFS {
        series += c * p;
        p *= inv2;
    }
    acc + y.ln() - 0.5 / y - series
}

/// ψ(x) = d/dx ln Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<Eval> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("digamma requires x > 0, got {x}"));
    }
    let v = digamma_pos(x);
    let shift = if x < 10.0 { (10.0 - x).ceil() + 1.0 } else { 1.0 };
    let err = 8.0 * f64::EPSILON * (v.abs() + shift / x.min(1.0) + 3.0);
    Ok(Eval::new(v, err, Method::Asymptotic))
}

/// ψ on the whole real line via reflection; NaN at poles.
pub(crate) fn digamma_any(x: f64) -> f64 {
    if x > 0.0 {
        return digamma_pos(x);
    }
    let s = sin_pi(x);
    if s == 0.0 {
        return f64::NAN;
    }
    digamma_pos(1.0 - x) - PI * cos_pi(x) / s
}

/// The Pochhammer symbol (a)_n = a (a+1) ⋯ (a+n−1), with (a)_0 = 1.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if n > 64 && a > 0.0 {
        return (ln_gamma_pos(a + n as f64) - ln_gamma_pos(a)).exp();
    }
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn gamma_ln_at_one_and_two() {
        assert_abs_diff_eq!(gamma_ln(1.0).unwrap().value, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(gamma_ln(2.0).unwrap().value, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn gamma_ln_rejects_nonpositive() {
        assert!(gamma_ln(0.0).is_err());
        assert!(gamma_ln(-1.5).is_err());
        assert!(digamma(0.0).is_err());
    }

    #[test]
    fn integer_gamma_is_factorial() {
        let mut f = 1.0;
        for n in 1..20 {
            assert!((gamma(n as f64) - f).abs() <= 1e-14 * f, "n = {n}");
            f *= n as f64;
        }
    }

    #[test]
    fn reflection_and_poles() {
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!(gamma(-2.0).is_infinite());
        let (sign, ln) = ln_gamma_signed(-0.5).unwrap();
        assert_eq!(sign, -1.0);
        assert!((ln - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
    }

    #[test]
    fn digamma_recurrence_values() {
        assert_abs_diff_eq!(digamma(2.0).unwrap().value, 1.0 - EULER_GAMMA, epsilon = 1e-14);
        let a = digamma_any(-0.5);
        // ψ(1 − x) − ψ(x) = π cot(πx); ψ(1.5) = 2 − γ − 2 ln 2
        assert_abs_diff_eq!(a, digamma_pos(1.5), epsilon = 1e-13);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(3.0, 0), 1.0);
        assert_eq!(pochhammer(1.0, 4), 24.0);
        assert_abs_diff_eq!(pochhammer(2.5, 3), 39.375, epsilon = 1e-13);
        let direct = (0..70).fold(1.0, |acc, k| acc * (0.5 + k as f64));
        assert!((pochhammer(0.5, 70) / direct - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trig_pi_exact_points() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(cos_pi(2.5), 0.0);
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert_eq!(cos_pi(1.0), -1.0);
    }
}
