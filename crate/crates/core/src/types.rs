use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A real Bessel order.
///
/// Construction only rejects non-finite values; every operation checks its
/// own admissible range (`ν > −1`, `ν > 0`, `ν > 1`, ...).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() {
            Ok(Order(nu))
        } else {
            domain(format!("order must be finite, got {nu}"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Integer value when the order is exactly integral.
    pub fn as_integer(self) -> Option<i64> {
        (self.0.fract() == 0.0 && self.0.abs() < 1e15).then_some(self.0 as i64)
    }

    pub(crate) fn require_gt(self, bound: f64, what: &str) -> Result<()> {
        if self.0 > bound {
            Ok(())
        } else {
            domain(format!("{what} requires order > {bound}, got {}", self.0))
        }
    }
}

impl TryFrom<f64> for Order {
    type Error = crate::Error;
    fn try_from(nu: f64) -> Result<Self> {
        Order::new(nu)
    }
}

/// How a value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    PowerSeries,
    BackwardRecurrence,
    Asymptotic,
    Oracle,
}

/// A value together with a conservative absolute-error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eval {
    pub value: f64,
    pub abs_err: f64,
    pub method: Method,
}

impl Eval {
    pub fn new(value: f64, abs_err: f64, method: Method) -> Self {
        debug_assert!(abs_err >= 0.0 || abs_err.is_nan());
        Eval { value, abs_err: abs_err.abs(), method }
    }

    pub(crate) fn exact(value: f64, method: Method) -> Self {
        Eval { value, abs_err: 0.0, method }
    }
}

/// Accuracy requirements passed to evaluators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Precision {
    pub target_abs_err: f64,
    pub max_terms: usize,
    pub oracle_digits: u32,
}

impl Precision {
    pub fn new(target_abs_err: f64, max_terms: usize, oracle_digits: u32) -> Result<Self> {
        if !(target_abs_err > 0.0 && target_abs_err < 1.0) {
            return domain(format!("target_abs_err must lie in (0, 1), got {target_abs_err}"));
        }
        if max_terms < 16 {
            return domain(format!("max_terms must be at least 16, got {max_terms}"));
        }
        if oracle_digits < 30 {
            return domain(format!("oracle_digits must be at least 30, got {oracle_digits}"));
        }
        Ok(Precision { target_abs_err, max_terms, oracle_digits })
    }

    pub fn with_target(target_abs_err: f64) -> Result<Self> {
        let d = Precision::default();
        Precision::new(target_abs_err, d.max_terms, d.oracle_digits)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision { target_abs_err: 1e-10, max_terms: 600, oracle_digits: 40 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_rejects_nan_and_infinity() {
        assert!(Order::new(f64::NAN).is_err());
        assert!(Order::new(f64::INFINITY).is_err());
        assert_eq!(Order::new(2.0).unwrap().as_integer(), Some(2));
        assert_eq!(Order::new(2.5).unwrap().as_integer(), None);
    }

    #[test]
    fn precision_invariants() {
        assert!(Precision::new(0.0, 100, 40).is_err());
        assert!(Precision::new(1e-12, 8, 40).is_err());
        assert!(Precision::new(1e-12, 100, 20).is_err());
        assert!(Precision::new(1e-12, 100, 40).is_ok());
    }
}
