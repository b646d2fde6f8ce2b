//! Jensen polynomials of the normalised Bessel function in exact rational
//! arithmetic, with Sturm-sequence root counting and isolation.
//!
//! With `w = x²/4`, `𝒥_ν = Σ_k b_k w^k / k!` where `b_k = (−1)^k / (ν+1)_k`,
//! and `g_n(w) = Σ_k C(n, k) b_k w^k = n!/(ν+1)_n · L_n^{(ν)}(w)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::types::Order;

pub const MAX_JENSEN_DEGREE: u32 = 12;
const BISECTIONS: usize = 64;

/// Dense polynomial, ascending powers.
type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect()
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - db;
        let q = &r[r.len() - 1] / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &q * c;
        }
        r.pop();
        r = trim(r);
        if r.len() <= db {
            break;
        }
    }
    trim(r)
}

/// Sign of `p(x)` for a primitive `p`, in integers: the value times the
/// positive factor `den(x)^deg`.
fn sign_at(p: &Poly, x: &BigRational) -> i8 {
    let (num, den) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * num + c.numer() * &den_pow;
        den_pow *= den;
    }
    sign(&BigRational::from_integer(acc))
}

/// Positive multiple of `p` with coprime integer coefficients; signs are kept.
fn primitive(p: Poly) -> Poly {
    let lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return p;
    }
    ints.into_iter().map(|c| BigRational::from_integer(c / &g)).collect()
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![primitive(p.clone()), primitive(trim(derivative(p)))];
    loop {
        let n = chain.len();
        if chain[n - 1].len() == 1 {
            break;
        }
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        chain.push(primitive(r.into_iter().map(|c| -c).collect()));
    }
    chain
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn sign(c: &BigRational) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

fn variations_at(chain: &[Poly], x: &BigRational) -> usize {
    variations(chain.iter().map(|p| sign_at(p, x)))
}

fn variations_at_infinity(chain: &[Poly], positive: bool) -> usize {
    variations(chain.iter().map(|p| {
        let s = sign(&p[p.len() - 1]);
        if positive || (p.len() - 1) % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// A Jensen polynomial with its real-root analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct JensenPoly {
    pub nu: f64,
    pub n: u32,
    /// Exact coefficients, ascending powers of `w`.
    pub coeffs: Vec<BigRational>,
    /// Distinct real roots by Sturm's theorem.
    pub sturm_count: usize,
    /// Isolated real roots, ascending.
    pub roots: Vec<f64>,
}

impl JensenPoly {
    pub fn real_rooted(&self) -> bool {
        self.sturm_count == self.n as usize
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// `g_n(𝒥_ν; w)` for `ν > −1`, `n ≤ 12`; `ν` is taken as the exact binary
/// rational it is stored as.
pub fn jensen_poly(nu: Order, n: u32) -> Result<JensenPoly> {
    nu.require_gt(-1.0, "Jensen polynomial")?;
    if n > MAX_JENSEN_DEGREE {
        return domain(format!("Jensen degree {n} exceeds {MAX_JENSEN_DEGREE}"));
    }
    let Some(nu_q) = BigRational::from_float(nu.value()) else {
        return domain("order is not representable as a rational");
    };
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut b = BigRational::one();
    let mut binom = BigRational::one();
    for k in 0..=n {
        coeffs.push(&binom * &b);
        let kq = BigRational::from_integer(k.into());
        b = -b / (&nu_q + &kq + BigRational::one());
        binom = binom * BigRational::from_integer((n - k).into()) / (kq + BigRational::one());
    }
    let coeffs = trim(coeffs);
    let (sturm_count, roots) = if n == 0 { (0, Vec::new()) } else { isolate(&coeffs) };
    Ok(JensenPoly { nu: nu.value(), n, coeffs, sturm_count, roots })
}

fn isolate(p: &Poly) -> (usize, Vec<f64>) {
    let chain = sturm_chain(p);
    let total = variations_at_infinity(&chain, false) - variations_at_infinity(&chain, true);
    let lead = p[p.len() - 1].abs();
    let bound = p[..p.len() - 1].iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |a, c| a.max(c))
        + BigRational::one();
    // an integer bound keeps every bisection point dyadic
    let bound = bound.ceil();
    let count = |a: &BigRational, b: &BigRational| variations_at(&chain, a) - variations_at(&chain, b);
    let two = BigRational::from_integer(2.into());
    let mut stack = vec![(-bound.clone(), bound)];
    let mut roots = Vec::new();
    while let Some((a, b)) = stack.pop() {
        match count(&a, &b) {
            0 => {}
            1 => {
                let (mut lo, mut hi) = (a, b);
                // shrink with Sturm counts until the ends are close in f64, then
                // finish by exact sign checks at dyadic midpoints
                for _ in 0..BISECTIONS {
                    if (&hi - &lo).to_f64().unwrap_or(f64::INFINITY) <= 1e-3 * (1.0 + lo.abs().to_f64().unwrap_or(0.0)) {
                        break;
                    }
                    let mid = (&lo + &hi) / &two;
                    if count(&lo, &mid) == 1 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                roots.push(refine(p, &lo, &hi).unwrap_or_else(|| ((&lo + &hi) / &two).to_f64().unwrap_or(f64::NAN)));
            }
            _ => {
                let mid = (&a + &b) / &two;
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    (total, roots)
}

/// Sign-change bisection over f64 midpoints on `(lo, hi]`, evaluated exactly;
/// `None` when the ends do not bracket a sign change.
fn refine(p: &Poly, lo: &BigRational, hi: &BigRational) -> Option<f64> {
    let p = &primitive(p.clone());
    let at = |v: f64| BigRational::from_float(v).map(|q| sign_at(p, &q));
    let (mut a, mut b) = (lo.to_f64()?, hi.to_f64()?);
    let (sa, sb) = (sign_at(p, lo), sign_at(p, hi));
    if sb == 0 {
        return Some(b);
    }
    if sa * sb >= 0 {
        return None;
    }
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Some(mid);
        }
        let sm = at(mid)?;
        if sm == 0 {
            return Some(mid);
        }
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_one() {
        let g = jensen_poly(Order::new(0.3).unwrap(), 0).unwrap();
        assert_eq!(g.coeffs, vec![BigRational::one()]);
    }

    #[test]
    fn laguerre_degree_two() {
        // ν = 0, n = 2: 1 − 2w + w²/2 = L_2^{(0)}(w), roots 2 ± √2
        let g = jensen_poly(Order::new(0.0).unwrap(), 2).unwrap();
        assert_eq!(g.coeffs_f64(), vec![1.0, -2.0, 0.5]);
        assert!(g.real_rooted());
        let s = 2f64.sqrt();
        assert!((g.roots[0] - (2.0 - s)).abs() < 1e-15 && (g.roots[1] - (2.0 + s)).abs() < 1e-15);
    }

    #[test]
    fn sturm_sees_complex_pairs() {
        // w² + 1
        let p = vec![BigRational::one(), BigRational::zero(), BigRational::one()];
        assert_eq!(isolate(&p).0, 0);
    }
}
