//! Positive zeros of `J_ν`, `Y_ν` and `J′_ν`.
//!
//! Zeros are found in order: a forward scan from the previous zero locates
//! the next sign change, and a safeguarded Newton iteration started from the
//! McMahon estimate refines it inside that bracket. Results are memoised per
//! `(kind, ν)` so that every caller sees the same values.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::bessel::j::{j_eval, jp_eval, MAX_ARG};
use crate::bessel::y::{y_eval, yp_eval};
use crate::error::{domain, Error, Result};
use crate::types::{Order, Precision};

pub const MAX_ZERO_INDEX: u32 = 100;
const SCAN_STEP: f64 = 0.1;
const SCAN_START: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZeroKind {
    JZero,
    YZero,
    JPrimeZero,
}

/// A refined zero and `|f|` at it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroEntry {
    pub x: f64,
    pub residual: f64,
}

type Key = (ZeroKind, i64);

/// Memo of zeros indexed by kind and order (quantised to 1e-12).
#[derive(Debug, Default)]
pub struct ZeroTable {
    entries: RwLock<HashMap<Key, Vec<ZeroEntry>>>,
}

fn quantise(nu: f64) -> i64 {
    (nu * 1e12).round() as i64
}

fn value_and_slope(kind: ZeroKind, nu: f64, x: f64) -> Result<(f64, f64)> {
    match kind {
        ZeroKind::JZero => Ok((j_eval(nu, x)?.value, jp_eval(nu, x)?.value)),
        ZeroKind::YZero => Ok((y_eval(nu, x)?.value, yp_eval(nu, x)?.value)),
        ZeroKind::JPrimeZero => {
            let d = jp_eval(nu, x)?.value;
            let j = j_eval(nu, x)?.value;
            // Bessel's equation: J″ = −J′/x − (1 − ν²/x²) J
            Ok((d, -d / x - (1.0 - nu * nu / (x * x)) * j))
        }
    }
}

fn value(kind: ZeroKind, nu: f64, x: f64) -> Result<f64> {
    match kind {
        ZeroKind::JZero => Ok(j_eval(nu, x)?.value),
        ZeroKind::YZero => Ok(y_eval(nu, x)?.value),
        ZeroKind::JPrimeZero => Ok(jp_eval(nu, x)?.value),
    }
}

/// McMahon's large-zero estimate for the n-th zero.
pub fn mcmahon_guess(kind: ZeroKind, nu: f64, n: u32) -> f64 {
    let n = n as f64;
    let mu = 4.0 * nu * nu;
    match kind {
        ZeroKind::JZero => {
            let b = (n + nu / 2.0 - 0.25) * PI;
            b - (mu - 1.0) / (8.0 * b)
        }
        ZeroKind::YZero => {
            let b = (n + nu / 2.0 - 0.75) * PI;
            b - (mu - 1.0) / (8.0 * b)
        }
        ZeroKind::JPrimeZero => {
            let b = (n + nu / 2.0 - 0.75) * PI;
            b - (mu + 3.0) / (8.0 * b)
        }
    }
}

fn refine(kind: ZeroKind, nu: f64, mut lo: f64, mut hi: f64, guess: f64) -> Result<ZeroEntry> {
    let flo = value(kind, nu, lo)?;
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    for _ in 0..200 {
        let (f, d) = value_and_slope(kind, nu, x)?;
        if f == 0.0 {
            return Ok(ZeroEntry { x, residual: 0.0 });
        }
        if (f < 0.0) == (flo < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / d;
        let next = if d != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        let converged = (next - x).abs() <= 2.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * x;
        x = next;
        if converged {
            let r = value(kind, nu, x)?.abs();
            return Ok(ZeroEntry { x, residual: r });
        }
    }
    Err(Error::NonConvergence(format!("zero refinement for order {nu} did not settle in [{lo}, {hi}]")))
}

fn check_order(kind: ZeroKind, nu: f64) -> Result<()> {
    match kind {
        ZeroKind::JZero | ZeroKind::JPrimeZero if nu <= -1.0 => {
            domain(format!("{kind:?} requires order > −1, got {nu}"))
        }
        // Y zeros are needed at negative orders too (Y_{ν±1} with ν < 1).
        ZeroKind::YZero if nu.abs() > 9.0 => domain(format!("YZero supports |order| ≤ 9, got {nu}")),
        _ => Ok(()),
    }
}

impl ZeroTable {
    pub fn new() -> Self {
        ZeroTable::default()
    }

    /// The process-wide table used by the free functions.
    pub fn global() -> &'static ZeroTable {
        static TABLE: OnceLock<ZeroTable> = OnceLock::new();
        TABLE.get_or_init(ZeroTable::new)
    }

    fn extend(&self, kind: ZeroKind, nu: f64, n: usize) -> Result<Vec<ZeroEntry>> {
        let key = (kind, quantise(nu));
        let mut list = {
            let guard = self.entries.read().expect("zero table lock poisoned");
            match guard.get(&key) {
                Some(v) if v.len() >= n => return Ok(v[..n].to_vec()),
                Some(v) => v.clone(),
                None => Vec::new(),
            }
        };
        // Scan on a fixed lattice so that the bracket, and with it the last
        // bit of every zero, does not depend on how the table was filled.
        let lattice = |k: usize| SCAN_START + k as f64 * SCAN_STEP;
        let mut k = list.last().map_or(0, |z| ((z.x - SCAN_START) / SCAN_STEP).floor() as usize + 1);
        let mut fa = value(kind, nu, lattice(k))?;
        while list.len() < n {
            let (a, b) = (lattice(k), lattice(k + 1));
            if b > MAX_ARG {
                return domain(format!("zero {} of order {nu} lies beyond x = {MAX_ARG}", list.len() + 1));
            }
            let fb = value(kind, nu, b)?;
            if fa == 0.0 {
                list.push(ZeroEntry { x: a, residual: 0.0 });
            } else if fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
                let guess = mcmahon_guess(kind, nu, list.len() as u32 + 1);
                list.push(refine(kind, nu, a, b, guess)?);
            }
            k += 1;
            fa = fb;
        }
        let mut guard = self.entries.write().expect("zero table lock poisoned");
        let slot = guard.entry(key).or_default();
        if slot.len() < list.len() {
            *slot = list.clone();
        }
        Ok(list[..n].to_vec())
    }

    pub fn zero(&self, kind: ZeroKind, nu: Order, n: u32) -> Result<ZeroEntry> {
        check_order(kind, nu.value())?;
        if n == 0 || n > MAX_ZERO_INDEX {
            return domain(format!("zero index must lie in 1..={MAX_ZERO_INDEX}, got {n}"));
        }
        Ok(self.extend(kind, nu.value(), n as usize)?[n as usize - 1])
    }

    /// First `n` zeros.
    pub fn first(&self, kind: ZeroKind, nu: Order, n: u32) -> Result<Vec<ZeroEntry>> {
        check_order(kind, nu.value())?;
        if n > MAX_ZERO_INDEX {
            return domain(format!("at most {MAX_ZERO_INDEX} zeros are tabulated, asked for {n}"));
        }
        self.extend(kind, nu.value(), n as usize)
    }

    /// All zeros in `(0, x_max]`.
    pub fn up_to(&self, kind: ZeroKind, nu: Order, x_max: f64) -> Result<Vec<f64>> {
        check_order(kind, nu.value())?;
        if !(x_max <= MAX_ARG) {
            return domain(format!("x_max must not exceed {MAX_ARG}, got {x_max}"));
        }
        let mut n = 4usize;
        loop {
            let list = self.extend(kind, nu.value(), n)?;
            if list.last().map_or(true, |z| z.x > x_max) || n as u32 >= MAX_ZERO_INDEX {
                return Ok(list.iter().map(|z| z.x).filter(|&x| x <= x_max).collect());
            }
            n = (2 * n).min(MAX_ZERO_INDEX as usize);
        }
    }

    /// Snapshot of every cached `(kind, quantised ν, n) → zero` entry.
    pub fn entries(&self) -> Vec<((ZeroKind, i64, u32), ZeroEntry)> {
        let guard = self.entries.read().expect("zero table lock poisoned");
        let mut out: Vec<_> = guard
            .iter()
            .flat_map(|(&(k, q), v)| v.iter().enumerate().map(move |(i, &z)| ((k, q, i as u32 + 1), z)))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// The n-th positive zero (1-based) from the global table.
pub fn zero(kind: ZeroKind, nu: Order, n: u32, _prec: &Precision) -> Result<ZeroEntry> {
    ZeroTable::global().zero(kind, nu, n)
}

/// Every positive zero up to `x_max`, ascending.
pub fn zeros_up_to(kind: ZeroKind, nu: Order, x_max: f64) -> Result<Vec<f64>> {
    ZeroTable::global().up_to(kind, nu, x_max)
}

/// Distance from `x` to the nearest zero of the given kind, and the local
/// spacing of zeros there (π when fewer than two zeros are nearby).
pub(crate) fn nearest_zero(kind: ZeroKind, nu: f64, x: f64) -> Result<(f64, f64)> {
    let order = Order::new(nu)?;
    let zs = zeros_up_to(kind, order, (x + 2.0 * PI).min(MAX_ARG))?;
    let mut best = (f64::INFINITY, PI);
    for (i, &z) in zs.iter().enumerate() {
        let d = (x - z).abs();
        if d < best.0 {
            let spacing = if i + 1 < zs.len() {
                zs[i + 1] - z
            } else if i > 0 {
                z - zs[i - 1]
            } else {
                PI
            };
            best = (d, spacing);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn first_zeros_of_j0() {
        let p = Precision::default();
        let z1 = zero(ZeroKind::JZero, o(0.0), 1, &p).unwrap();
        assert!((z1.x - 2.404_825_557_695_773).abs() < 1e-13);
        let z2 = zero(ZeroKind::JZero, o(0.0), 2, &p).unwrap();
        assert!((z2.x - 5.520_078_110_286_311).abs() < 1e-13);
    }

    #[test]
    fn y_and_derivative_zeros() {
        let p = Precision::default();
        let y = zero(ZeroKind::YZero, o(0.0), 1, &p).unwrap();
        assert!((y.x - 0.893_576_966_279_167_5).abs() < 1e-12);
        let d = zero(ZeroKind::JPrimeZero, o(1.0), 1, &p).unwrap();
        assert!((d.x - 1.841_183_781_340_659_3).abs() < 1e-12);
        let d0 = zero(ZeroKind::JPrimeZero, o(0.0), 1, &p).unwrap();
        assert!((d0.x - 3.831_705_970_207_512).abs() < 1e-12);
    }

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        let zs = ZeroTable::new().first(ZeroKind::JZero, o(0.5), 100).unwrap();
        for (i, z) in zs.iter().enumerate() {
            assert!((z.x - (i + 1) as f64 * PI).abs() < 1e-11 * z.x, "{i}: {}", z.x);
        }
    }

    #[test]
    fn rejects_bad_requests() {
        let p = Precision::default();
        assert!(zero(ZeroKind::JZero, o(-1.0), 1, &p).is_err());
        assert!(zero(ZeroKind::JZero, o(1.0), 0, &p).is_err());
        assert!(zero(ZeroKind::JZero, o(1.0), 101, &p).is_err());
    }

    #[test]
    fn table_is_deterministic_across_instances() {
        let a = ZeroTable::new().first(ZeroKind::JZero, o(2.3), 7).unwrap();
        let t = ZeroTable::new();
        t.first(ZeroKind::JZero, o(2.3), 3).unwrap();
        let b = t.first(ZeroKind::JZero, o(2.3), 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(t.entries().len(), 7);
    }
}
