//! Entire normalisations of `J_ν` and their derivatives.
//!
//! * `𝒥_ν(x) = 2^ν Γ(ν+1) x^{−ν} J_ν(x) = Σ_m (−x²/4)^m / (m! (ν+1)_m)`
//! * `J̃_ν(x) = x^{−ν/2} J_ν(2√x) = Σ_m (−x)^m / (m! Γ(m+ν+1))`
//!
//! Derivatives are taken term by term and summed in double-double; the
//! alternating terms cancel heavily for large `x` and the extra word keeps
//! the result at `f64` accuracy over the supported range.

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::gamma::rgamma;
use crate::types::{Eval, Method, Order, Precision};

const MAX_DERIV: u32 = 20;
const EPS: f64 = f64::EPSILON;

fn check(nu: Order, k: u32, x: f64) -> Result<()> {
    nu.require_gt(-1.0, "normalised Bessel function")?;
    if k > MAX_DERIV {
        return domain(format!("derivative order {k} exceeds {MAX_DERIV}"));
    }
    if !x.is_finite() || x.abs() > crate::bessel::j::MAX_ARG {
        return domain(format!("argument {x} outside supported range"));
    }
    Ok(())
}

fn finish(sum: Dd, max_term: f64, next: f64, terms: usize) -> Eval {
    let v = sum.to_f64();
    let err = 2.0 * EPS * v.abs() + next + 1e-31 * max_term * terms as f64;
    Eval::new(v, err, Method::PowerSeries)
}

/// `𝒥_ν^{(k)}(x)`, the k-th derivative of the normalised function.
pub fn normalized_j(nu: Order, k: u32, x: f64, prec: &Precision) -> Result<Eval> {
    check(nu, k, x)?;
    let o = nu.value();
    let step = |a: Dd, m: usize| -(a.div_f64(4.0 * m as f64) / (Dd::new(o) + Dd::new(m as f64)));
    let x = Dd::new(x);
    let x2 = x * x;
    // a_m = (−1/4)^m / (m! (ν+1)_m); term_m = a_m · (2m)!/(2m−k)! · x^{2m−k}
    let m0 = ((k + 1) / 2) as usize;
    let mut a = Dd::ONE;
    for m in 1..=m0 {
        a = step(a, m);
    }
    let mut xp = Dd::ONE;
    for _ in 0..(2 * m0 - k as usize) {
        xp = xp * x;
    }
    let mut sum = Dd::ZERO;
    let mut max_term = 0.0_f64;
    let halfx2 = x2.to_f64().abs() / 4.0;
    let mut m = m0;
    let mut count = 0usize;
    loop {
        let mut ff = Dd::ONE;
        for i in 0..k as usize {
            ff = ff.mul_f64((2 * m - i) as f64);
        }
        let term = a * ff * xp;
        sum = sum + term;
        let t = term.to_f64().abs();
        max_term = max_term.max(t);
        count += 1;
        if count > prec.max_terms {
            return Err(Error::NonConvergence(format!(
                "normalised series did not converge in {} terms",
                prec.max_terms
            )));
        }
        let mf = m as f64;
        let past_peak = mf * (mf + o) > 2.0 * halfx2 + (k as f64) * (k as f64);
        if past_peak && t <= 1e-18 * sum.to_f64().abs().max(1e-300) {
            let next = t * halfx2 / ((mf + 1.0) * (mf + 1.0 + o)) * 4.0;
            return Ok(finish(sum, max_term, next, count));
        }
        m += 1;
        a = step(a, m);
        xp = xp * x2;
    }
}

/// `J̃_ν^{(k)}(x)`, the k-th derivative of `x^{−ν/2} J_ν(2√x)`.
pub fn jtilde(nu: Order, k: u32, x: f64, prec: &Precision) -> Result<Eval> {
    check(nu, k, x)?;
    let o = nu.value();
    let scale = rgamma(o + 1.0);
    // term_j = (−1)^{k+j} x^j / (j! (ν+1)_{k+j}), times 1/Γ(ν+1)
    let mut term = Dd::ONE;
    for i in 0..k {
        term = -(term / (Dd::new(o) + Dd::new(1.0 + i as f64)));
    }
    let mut sum = term;
    let mut max_term = term.to_f64().abs();
    let xd = Dd::new(-x);
    let mut j = 0usize;
    loop {
        j += 1;
        if j > prec.max_terms {
            return Err(Error::NonConvergence(format!(
                "J̃ series did not converge in {} terms",
                prec.max_terms
            )));
        }
        let jf = j as f64;
        let denom = jf * (o + k as f64 + jf);
        term = (term * xd).div_f64(jf) / (Dd::new(o) + Dd::new(k as f64 + jf));
        sum = sum + term;
        let t = term.to_f64().abs();
        max_term = max_term.max(t);
        if denom > 2.0 * x.abs() && t <= 1e-18 * sum.to_f64().abs().max(1e-300) {
            let next = t * x.abs() / ((jf + 1.0) * (o + k as f64 + jf + 1.0));
            let e = finish(sum, max_term, next, j);
            return Ok(Eval::new(e.value * scale, e.abs_err * scale + EPS * (e.value * scale).abs(), e.method));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::j::j_eval;
    use crate::gamma::gamma;

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn normalized_at_origin_is_one() {
        for &nu in &[-0.5, 0.0, 1.5, 4.0] {
            let v = normalized_j(Order::new(nu).unwrap(), 0, 0.0, &p()).unwrap().value;
            assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn normalized_matches_definition() {
        for &(nu, x) in &[(0.5_f64, 3.0_f64), (2.0, 7.5), (-0.3, 15.0), (1.0, 33.0)] {
            let lhs = normalized_j(Order::new(nu).unwrap(), 0, x, &p()).unwrap().value;
            let rhs = 2f64.powf(nu) * gamma(nu + 1.0) * x.powf(-nu) * j_eval(nu, x).unwrap().value;
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0), "{nu} {x}: {lhs} {rhs}");
        }
    }

    #[test]
    fn normalized_derivative_identity() {
        // 𝒥′_ν(x) = −x 𝒥_{ν+1}(x) / (2(ν+1))
        for &(nu, x) in &[(0.5_f64, 3.0_f64), (2.0, 17.0)] {
            let d = normalized_j(Order::new(nu).unwrap(), 1, x, &p()).unwrap().value;
            let n1 = normalized_j(Order::new(nu + 1.0).unwrap(), 0, x, &p()).unwrap().value;
            assert!((d + x * n1 / (2.0 * (nu + 1.0))).abs() < 1e-13);
        }
    }

    #[test]
    fn jtilde_matches_definition_and_shift() {
        for &(nu, x) in &[(0.5_f64, 2.0_f64), (3.0, 40.0), (-0.5, 9.0)] {
            let o = Order::new(nu).unwrap();
            let v = jtilde(o, 0, x, &p()).unwrap().value;
            let rhs = x.powf(-nu / 2.0) * j_eval(nu, 2.0 * x.sqrt()).unwrap().value;
            assert!((v - rhs).abs() < 1e-12 * rhs.abs().max(1.0), "{nu} {x}");
            // d/dx J̃_ν = −J̃_{ν+1}
            let d = jtilde(o, 1, x, &p()).unwrap().value;
            let s = jtilde(Order::new(nu + 1.0).unwrap(), 0, x, &p()).unwrap().value;
            assert!((d + s).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(normalized_j(Order::new(-1.0).unwrap(), 0, 1.0, &p()).is_err());
        assert!(jtilde(Order::new(1.0).unwrap(), 21, 1.0, &p()).is_err());
    }
}
