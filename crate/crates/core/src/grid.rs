use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of nodes a single range may hold.
pub const MAX_COUNT: usize = 1_000_000;

/// Inclusive, evenly spaced range `lo:hi:count`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Range {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || !(hi - lo).is_finite() {
            return Err(Error::Parse(format!("range bounds must be finite, got {lo}:{hi}")));
        }
        if count == 0 {
            return Err(Error::Parse("range count must be at least 1".into()));
        }
        if count > MAX_COUNT {
            return Err(Error::Parse(format!("range count {count} exceeds {MAX_COUNT}")));
        }
        if hi < lo {
            return Err(Error::Parse(format!("range upper bound {hi} below lower bound {lo}")));
        }
        if count == 1 && hi != lo {
            return Err(Error::Parse(format!("a one-point range needs lo == hi, got {lo}:{hi}")));
        }
        Ok(Range { lo, hi, count })
    }

    pub fn single(v: f64) -> Self {
        Range { lo: v, hi: v, count: 1 }
    }

    pub fn nodes(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }
}

impl FromStr for Range {
    type Err = Error;

    /// `lo:hi:count`, or a single number for a one-point range.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| {
            t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {t:?} in range {s:?}")))
        };
        match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Range::new(v, v, 1)
            }
            [lo, hi, count] => {
                let count = count
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point count {count:?} in range {s:?}")))?;
                Range::new(num(lo)?, num(hi)?, count)
            }
            _ => Err(Error::Parse(format!("expected lo:hi:count, got {s:?}"))),
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.count == 1 {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}:{}:{}", self.lo, self.hi, self.count)
        }
    }
}

/// Tensor grid over order and argument.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub nu: Range,
    pub x: Range,
}

impl Grid {
    pub fn new(nu: Range, x: Range) -> Self {
        Grid { nu, x }
    }

    /// Nodes in ν-major, x-minor order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let xs = self.x.nodes();
        self.nu.nodes().into_iter().flat_map(|nu| xs.iter().map(move |&x| (nu, x))).collect()
    }
}
