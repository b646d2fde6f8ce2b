//! A value carried with a first-order absolute error bound through the
//! handful of arithmetic operations used by inequality margins.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::types::Eval;

const EPS: f64 = f64::EPSILON;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct T {
    pub v: f64,
    pub e: f64,
}

impl T {
    pub fn exact(v: f64) -> Self {
        T { v, e: 0.0 }
    }

    pub fn sq(self) -> Self {
        self * self
    }

    pub fn min(self, o: T) -> Self {
        if self.v <= o.v {
            T { v: self.v, e: self.e.max(o.e) }
        } else {
            T { v: o.v, e: self.e.max(o.e) }
        }
    }
}

impl From<Eval> for T {
    fn from(e: Eval) -> Self {
        T { v: e.value, e: e.abs_err }
    }
}

impl Add for T {
    type Output = T;
    fn add(self, o: T) -> T {
        let v = self.v + o.v;
        T { v, e: self.e + o.e + EPS * v.abs() }
    }
}

impl Sub for T {
    type Output = T;
    fn sub(self, o: T) -> T {
        let v = self.v - o.v;
        T { v, e: self.e + o.e + EPS * v.abs() }
    }
}

impl Neg for T {
    type Output = T;
    fn neg(self) -> T {
        T { v: -self.v, e: self.e }
    }
}

impl Mul for T {
    type Output = T;
    fn mul(self, o: T) -> T {
        let v = self.v * o.v;
        T { v, e: self.e * o.v.abs() + o.e * self.v.abs() + self.e * o.e + EPS * v.abs() }
    }
}

impl Div for T {
    type Output = T;
    fn div(self, o: T) -> T {
        let v = self.v / o.v;
        let room = o.v.abs() - o.e;
        let e = if room > 0.0 { (self.e + v.abs() * o.e) / room } else { f64::INFINITY };
        T { v, e: e + EPS * v.abs() }
    }
}

impl Mul<f64> for T {
    type Output = T;
    fn mul(self, c: f64) -> T {
        let v = self.v * c;
        T { v, e: self.e * c.abs() + EPS * v.abs() }
    }
}

impl Mul<T> for f64 {
    type Output = T;
    fn mul(self, t: T) -> T {
        t * self
    }
}

impl Add<f64> for T {
    type Output = T;
    fn add(self, c: f64) -> T {
        self + T::exact(c)
    }
}

impl Sub<T> for f64 {
    type Output = T;
    fn sub(self, t: T) -> T {
        T::exact(self) - t
    }
}

impl Div<f64> for T {
    type Output = T;
    fn div(self, c: f64) -> T {
        self * (1.0 / c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_grows_with_cancellation() {
        let a = T { v: 1.0, e: 1e-16 };
        let b = T { v: 1.0 - 1e-10, e: 1e-16 };
        let d = a - b;
        assert!(d.e >= 2e-16);
        let q = a / T { v: 1e-3, e: 1e-3 };
        assert!(q.e.is_infinite());
    }
}
