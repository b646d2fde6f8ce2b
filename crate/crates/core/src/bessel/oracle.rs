//! Multiple-precision reference values (MPFR via `rug`).
//!
//! `J_ν` is the power series summed at a working precision that covers the
//! worst-case cancellation `≈ e^x` among its terms; summation stops once the
//! term ratio has dropped below 1/2, so the neglected tail is bounded by
//! twice the last term. `Y_ν` uses the connection formula, at `n ± ε` with
//! `ε = 10^{−(d/2+4)}` for integer order `n`.

use rug::ops::Pow;
use rug::Float;

use crate::error::{domain, Error, Result};

const ORACLE_MAX_ARG: f64 = 400.0;

fn working_bits(digits: u32, x: f64, extra: u32) -> u32 {
    (digits as f64 * 3.33).ceil() as u32 + (1.45 * x.abs()).ceil() as u32 + 64 + extra
}

fn series(nu: &Float, x: f64, digits: u32, bits: u32) -> Result<Float> {
    let half = Float::with_val(bits, x) / 2u32;
    let q = Float::with_val(bits, &half * &half);
    let nu1 = Float::with_val(bits, nu + 1u32);
    let mut term = Float::with_val(bits, (&half).pow(nu)) / Float::with_val(bits, nu1.gamma_ref());
    let mut sum = term.clone();
    let cutoff = Float::with_val(bits, 10f64).pow(-(digits as i32) - 8);
    for m in 1..100_000u32 {
        let denom = Float::with_val(bits, nu + m) * m;
        let ratio = Float::with_val(bits, &q / &denom);
        term *= &ratio;
        term = -term;
        sum += &term;
        let small = Float::with_val(bits, term.clone().abs()) <= Float::with_val(bits, &cutoff * sum.clone().abs());
        let ratio_ok = ratio < 0.5 && Float::with_val(bits, nu + m) > 0u32;
        if small && ratio_ok {
            return Ok(sum);
        }
    }
    Err(Error::TailNotBounded(format!("oracle series for x = {x} did not reach its tail bound")))
}

/// `J_ν(x)` to at least `digits` significant decimal digits.
pub fn oracle_j(nu: f64, x: f64, digits: u32) -> Result<Float> {
    if !nu.is_finite() || !x.is_finite() || x.abs() > ORACLE_MAX_ARG {
        return domain(format!("oracle J: unsupported input (ν = {nu}, x = {x})"));
    }
    let bits = working_bits(digits, x, 0);
    let is_int = nu.fract() == 0.0;
    if is_int && nu < 0.0 {
        let v = oracle_j(-nu, x, digits)?;
        return Ok(if (nu as i64) % 2 == 0 { v } else { -v });
    }
    if x < 0.0 {
        if !is_int {
            return domain("oracle J: negative argument needs integer order");
        }
        let v = oracle_j(nu, -x, digits)?;
        return Ok(if (nu as i64) % 2 == 0 { v } else { -v });
    }
    if x == 0.0 {
        return match () {
            _ if nu == 0.0 => Ok(Float::with_val(bits, 1u32)),
            _ if nu > 0.0 => Ok(Float::new(bits)),
            _ => domain("oracle J: singular at x = 0"),
        };
    }
    series(&Float::with_val(bits, nu), x, digits, bits)
}

fn y_connection(nu: &Float, x: f64, digits: u32, bits: u32) -> Result<Float> {
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let arg = Float::with_val(bits, nu * &pi);
    let (s, c) = arg.sin_cos(Float::new(bits));
    let jp = series(nu, x, digits, bits)?;
    let neg = Float::with_val(bits, -nu);
    let jm = series(&neg, x, digits, bits)?;
    Ok((jp * c - jm) / s)
}

/// `Y_ν(x)` for `x > 0`.
pub fn oracle_y(nu: f64, x: f64, digits: u32) -> Result<Float> {
    if !nu.is_finite() || !(x > 0.0) || x > ORACLE_MAX_ARG {
        return domain(format!("oracle Y: unsupported input (ν = {nu}, x = {x})"));
    }
    let delta = nu - nu.round();
    if delta == 0.0 {
        let e_digits = digits / 2 + 4;
        let bits = working_bits(digits, x, (e_digits as f64 * 3.33).ceil() as u32 + 16);
        let eps = Float::with_val(bits, 10f64).pow(-(e_digits as i32));
        let n = Float::with_val(bits, nu);
        let a = y_connection(&Float::with_val(bits, &n + &eps), x, digits, bits)?;
        let b = y_connection(&Float::with_val(bits, &n - &eps), x, digits, bits)?;
        return Ok((a + b) / 2u32);
    }
    let loss = (-delta.abs().log2()).max(0.0).ceil() as u32 + 16;
    let bits = working_bits(digits, x, loss);
    y_connection(&Float::with_val(bits, nu), x, digits, bits)
}

/// `J′_ν(x) = (J_{ν−1} − J_{ν+1}) / 2`.
pub fn oracle_j_prime(nu: f64, x: f64, digits: u32) -> Result<Float> {
    let a = oracle_j(nu - 1.0, x, digits)?;
    let b = oracle_j(nu + 1.0, x, digits)?;
    Ok((a - b) / 2u32)
}

/// `Y′_ν(x) = (Y_{ν−1} − Y_{ν+1}) / 2`.
pub fn oracle_y_prime(nu: f64, x: f64, digits: u32) -> Result<Float> {
    let a = oracle_y(nu - 1.0, x, digits)?;
    let b = oracle_y(nu + 1.0, x, digits)?;
    Ok((a - b) / 2u32)
}

/// ln Γ(x) for `x > 0`.
pub fn oracle_ln_gamma(x: f64, digits: u32) -> Result<Float> {
    if !(x > 0.0) {
        return domain("oracle ln Γ requires x > 0");
    }
    Ok(Float::with_val(working_bits(digits, 0.0, 0), x).ln_gamma())
}

/// ψ(x) for `x > 0`.
pub fn oracle_digamma(x: f64, digits: u32) -> Result<Float> {
    if !(x > 0.0) {
        return domain("oracle ψ requires x > 0");
    }
    Ok(Float::with_val(working_bits(digits, 0.0, 0), x).digamma())
}

/// Ai(t) from MPFR.
pub fn oracle_airy_ai(t: f64, digits: u32) -> Float {
    Float::with_val(working_bits(digits, 0.0, 0), t).ai()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let j0 = oracle_j(0.0, 1.0, 40).unwrap().to_f64();
        assert!((j0 - 0.765_197_686_557_966_6).abs() < 1e-16);
        let y0 = oracle_y(0.0, 1.0, 40).unwrap().to_f64();
        assert!((y0 - 0.088_256_964_215_676_96).abs() < 1e-16);
    }

    #[test]
    fn half_order_closed_form_to_many_digits() {
        let bits = 200;
        let x = Float::with_val(bits, 7.25);
        let pi = Float::with_val(bits, rug::float::Constant::Pi);
        let exact = Float::with_val(bits, 2u32 / (pi * &x)).sqrt() * x.clone().sin();
        let got = oracle_j(0.5, 7.25, 45).unwrap();
        let diff = Float::with_val(bits, got - exact).abs();
        assert!(diff < 1e-44);
    }

    #[test]
    fn negative_integer_order_parity() {
        let a = oracle_j(-3.0, 2.0, 40).unwrap();
        let b = oracle_j(3.0, 2.0, 40).unwrap();
        assert_eq!(a, -b);
    }
}
