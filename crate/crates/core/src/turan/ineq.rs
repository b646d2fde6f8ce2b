//! Pointwise certification of Turán-, Laguerre- and bound-type inequalities
//! on (ν, x) grids.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bessel::j::{j_eval, jp_eval};
use crate::bessel::y::{y_eval, yp_eval};
use crate::bessel::{landau_bound, normalized_j};
use crate::error::{domain, Error, Result};
use crate::grid::{Grid, Range};
use crate::tracked::T;
use crate::turan::det::{hankel_det_jtilde, turan_det};
use crate::types::{Order, Precision};
use crate::yturan::find_x_nu;
use crate::zeros::{nearest_zero, zero, ZeroKind};

/// Stand-in for `x = 0` in margins that are continuous there but whose
/// factors are singular (e.g. `J_{ν−1}` for `ν < 1`).
const ORIGIN: f64 = 1e-30;
const SKIP_RADIUS: f64 = 1e-4;

/// Domain variant for the second-kind bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum YDomain {
    /// `ν > 1`, `x ≥ x_ν`
    Standard,
    /// `ν ≠ 0` (`ν > 0` for the quotient bound), `x ≥ y_{ν−1,1}`
    Widened,
}

/// Inequality selector. Every margin is written as `LHS − RHS ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum InequalityId {
    Turan1,
    Turan2,
    Turan5,
    SalamT(u8),
    AlSalamM2,
    Btn1,
    Btn2,
    Btn3(u8),
    Btnd1,
    Btnd2,
    Btnd3(u8),
    Llag1(u8),
    Llag2(u8, u8),
    SzaszUpper,
    SzaszBox,
    Bound1,
    Bound2,
    Bound3,
    Bound4,
    BoundN1,
    BoundN2,
    BoundN3,
    BoundN4,
    KsTuranDet(u8),
    KsHankelDet(u8),
    EquivLlag1,
    TuranY0,
    TuranY1,
    BoundY(u8, YDomain),
    Landau,
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InequalityId::*;
        match self {
            Turan1 => write!(f, "turan1"),
            Turan2 => write!(f, "turan2"),
            Turan5 => write!(f, "turan5"),
            SalamT(m) => write!(f, "salamt:{m}"),
            AlSalamM2 => write!(f, "alsalam-m2"),
            Btn1 => write!(f, "btn1"),
            Btn2 => write!(f, "btn2"),
            Btn3(k) => write!(f, "btn3:{k}"),
            Btnd1 => write!(f, "btnd1"),
            Btnd2 => write!(f, "btnd2"),
            Btnd3(k) => write!(f, "btnd3:{k}"),
            Llag1(n) => write!(f, "llag1:{n}"),
            Llag2(n, k) => write!(f, "llag2:{n}:{k}"),
            SzaszUpper => write!(f, "szasz-upper"),
            SzaszBox => write!(f, "szasz-box"),
            Bound1 => write!(f, "bound1"),
            Bound2 => write!(f, "bound2"),
            Bound3 => write!(f, "bound3"),
            Bound4 => write!(f, "bound4"),
            BoundN1 => write!(f, "boundn1"),
            BoundN2 => write!(f, "boundn2"),
            BoundN3 => write!(f, "boundn3"),
            BoundN4 => write!(f, "boundn4"),
            KsTuranDet(n) => write!(f, "ks-turandet:{n}"),
            KsHankelDet(n) => write!(f, "ks-hankeldet:{n}"),
            EquivLlag1 => write!(f, "equiv-llag1"),
            TuranY0 => write!(f, "turany0"),
            TuranY1 => write!(f, "turany1"),
            BoundY(k, YDomain::Standard) => write!(f, "boundy{k}"),
            BoundY(k, YDomain::Widened) => write!(f, "boundy{k}:widened"),
            Landau => write!(f, "landau"),
        }
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use InequalityId::*;
        let lower = s.trim().to_ascii_lowercase();
        let parts: Vec<&str> = lower.split(':').collect();
        let bad = || Error::Parse(format!("unknown inequality {s:?}"));
        let num = |t: &str| t.parse::<u8>().map_err(|_| bad());
        let id = match parts.as_slice() {
            ["turan1"] => Turan1,
            ["turan2"] => Turan2,
            ["turan5"] => Turan5,
            ["salamt", m] => SalamT(num(m)?),
            ["alsalam-m2"] => AlSalamM2,
            ["btn1"] => Btn1,
            ["btn2"] => Btn2,
            ["btn3", k] => Btn3(num(k)?),
            ["btnd1"] => Btnd1,
            ["btnd2"] => Btnd2,
            ["btnd3", k] => Btnd3(num(k)?),
            ["llag1", n] => Llag1(num(n)?),
            ["llag2", n, k] => Llag2(num(n)?, num(k)?),
            ["szasz-upper"] => SzaszUpper,
            ["szasz-box"] => SzaszBox,
            ["bound1"] => Bound1,
            ["bound2"] => Bound2,
            ["bound3"] => Bound3,
            ["bound4"] => Bound4,
            ["boundn1"] => BoundN1,
            ["boundn2"] => BoundN2,
            ["boundn3"] => BoundN3,
            ["boundn4"] => BoundN4,
            ["ks-turandet", n] => KsTuranDet(num(n)?),
            ["ks-hankeldet", n] => KsHankelDet(num(n)?),
            ["equiv-llag1"] => EquivLlag1,
            ["turany0"] => TuranY0,
            ["turany1"] => TuranY1,
            ["landau"] => Landau,
            [b] if b.starts_with("boundy") => BoundY(num(&b[6..])?, YDomain::Standard),
            [b, "widened"] if b.starts_with("boundy") => BoundY(num(&b[6..])?, YDomain::Widened),
            _ => return Err(bad()),
        };
        id.validate().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(id)
    }
}

impl From<InequalityId> for String {
    fn from(id: InequalityId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for InequalityId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Admissible orders: above `lo` (inclusive or not), at most `hi`, and
/// optionally excluding 0.
struct OrderDomain {
    lo: f64,
    inclusive: bool,
    hi: f64,
    nonzero: bool,
}

impl InequalityId {
    /// Whether the parameters lie in their documented ranges.
    pub fn validate(self) -> Result<()> {
        use InequalityId::*;
        let ok = match self {
            SalamT(m) => m <= 6,
            Btn3(k) | Btnd3(k) => k <= 4,
            Llag1(n) => (1..=6).contains(&n),
            Llag2(n, k) => n <= 6 && k <= 4,
            KsTuranDet(n) | KsHankelDet(n) => matches!(n, 2 | 4 | 6),
            BoundY(k, _) => (1..=4).contains(&k),
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            domain(format!("parameters of {self} outside their documented range"))
        }
    }

    fn order_domain(self) -> OrderDomain {
        use InequalityId::*;
        let d = |lo, inclusive| OrderDomain { lo, inclusive, hi: f64::INFINITY, nonzero: false };
        match self {
            Turan2 | SzaszUpper | SzaszBox | Bound4 | BoundN1 | BoundN2 | BoundN3 | BoundN4 | Landau => {
                d(0.0, false)
            }
            Turan5 => d(0.0, true),
            TuranY0 | TuranY1 | BoundY(_, YDomain::Standard) => OrderDomain { lo: 1.0, inclusive: false, hi: 8.0, nonzero: false },
            BoundY(4, YDomain::Widened) => OrderDomain { lo: 0.0, inclusive: false, hi: 8.0, nonzero: false },
            BoundY(_, YDomain::Widened) => OrderDomain { lo: -8.0, inclusive: true, hi: 8.0, nonzero: true },
            _ => d(-1.0, false),
        }
    }

    /// Rejects orders outside the inequality's hypotheses.
    pub fn check_order(self, nu: f64) -> Result<()> {
        let d = self.order_domain();
        let above = if d.inclusive { nu >= d.lo } else { nu > d.lo };
        if !above || nu > d.hi || (d.nonzero && nu == 0.0) || !nu.is_finite() {
            return domain(format!("{self} is not stated for order {nu}"));
        }
        Ok(())
    }

    fn uses_second_kind(self) -> bool {
        matches!(self, InequalityId::TuranY0 | InequalityId::TuranY1 | InequalityId::BoundY(..))
    }
}

/// One evaluated (or skipped) grid node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointMargin {
    pub nu: f64,
    pub x: f64,
    pub margin: Option<f64>,
    pub abs_err: Option<f64>,
    pub skipped: Option<String>,
}

/// A node where the margin fell below tolerance, or where evaluation
/// failed (then `residual` is absent and `error` names the failure).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub nu: f64,
    pub x: f64,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub ineq: InequalityId,
    pub grid: Grid,
    pub min_margin: Option<f64>,
    pub argmin: Option<(f64, f64)>,
    pub violations: Vec<Violation>,
    pub certified: bool,
    pub points: Vec<PointMargin>,
    pub note: Option<String>,
}

impl InequalityReport {
    pub fn skipped(&self) -> usize {
        self.points.iter().filter(|p| p.skipped.is_some()).count()
    }
}

/// Certification tolerance for a margin with the given error estimate.
pub fn tolerance(abs_err: f64) -> f64 {
    1e-10_f64.max(50.0 * abs_err)
}

/// Per-row data for the second-kind domains.
#[derive(Clone, Copy, Debug)]
struct Row {
    /// `None` when the order is outside the hypotheses (lenient sweeps only)
    x_lo: Option<f64>,
}

enum Node {
    Value(T),
    Skip(String),
}

fn jt(order: f64, x: f64) -> Result<T> {
    Ok(j_eval(order, x)?.into())
}

fn jpt(order: f64, x: f64) -> Result<T> {
    Ok(jp_eval(order, x)?.into())
}

fn yt(order: f64, x: f64) -> Result<T> {
    Ok(y_eval(order, x)?.into())
}

fn ypt(order: f64, x: f64) -> Result<T> {
    Ok(yp_eval(order, x)?.into())
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `Σ_{j=0}^{2k} (−1)^{j+k} C(2k, j)/(2k)! f_{n+j} f_{n+2k−j}` from the
/// sequence `f_0 … f_{n+2k}`.
fn patrick_sum(f: &[T], n: usize, k: usize) -> T {
    let fact: f64 = (1..=2 * k).map(|i| i as f64).product();
    let mut s = T::exact(0.0);
    // pair j with 2k − j; the middle term stands alone
    for j in 0..k {
        let c = 2.0 * binom(2 * k as u32, j as u32) / fact * if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
        s = s + f[n + j] * f[n + 2 * k - j] * c;
    }
    let c = binom(2 * k as u32, k as u32) / fact;
    s + f[n + k].sq() * c
}

fn near_zero(kind: ZeroKind, order: f64, x: f64, what: &str) -> Result<Option<String>> {
    let (d, spacing) = nearest_zero(kind, order, x)?;
    Ok((d < SKIP_RADIUS * spacing).then(|| format!("within {d:.1e} of a zero of {what}")))
}

/// Turán-type margin `4 D₁ D₂ − E²` for shifted sequences `f_0..f_3`.
fn higher_order(f: &[T]) -> T {
    let d1 = f[1].sq() - f[0] * f[2];
    let d2 = f[2].sq() - f[1] * f[3];
    let e = f[1] * f[2] - f[0] * f[3];
    4.0 * d1 * d2 - e.sq()
}

fn margin(id: InequalityId, nu: f64, x: f64, row: Row, prec: &Precision) -> Result<Node> {
    use InequalityId::*;
    let outside = || Ok(Node::Skip("outside domain".into()));
    let needs_positive = matches!(id, Bound2 | BoundN2 | Bound4 | BoundN4 | EquivLlag1 | Landau)
        || id.uses_second_kind();
    if needs_positive && x <= 0.0 {
        return outside();
    }
    let Some(x_lo) = row.x_lo else {
        return Ok(Node::Skip("order outside domain".into()));
    };
    if x < x_lo {
        return outside();
    }
    let x = if x == 0.0 { ORIGIN } else { x.abs() };
    let mu = nu / (nu + 1.0);
    let v = match id {
        Turan1 | Turan2 | Turan5 => {
            let (jm, j0, j1) = (jt(nu - 1.0, x)?, jt(nu, x)?, jt(nu + 1.0, x)?);
            let d = j0.sq() - jm * j1;
            match id {
                Turan1 => d,
                Turan2 => d - j0.sq() / (nu + 1.0),
                _ => d - j0.sq() / (nu + 1.0) - j1.sq() * (2.0 / (nu + 2.0)),
            }
        }
        SalamT(_) | AlSalamM2 => {
            let m = match id {
                SalamT(m) => m as i32,
                _ => 2,
            };
            let vals: Vec<T> = (-m..=m).map(|n| jt(nu + n as f64, x)).collect::<Result<_>>()?;
            let at = |n: i32| vals[(n + m) as usize];
            if id == AlSalamM2 {
                let d = at(0).sq() - at(-1) * at(1);
                3.0 * d - (at(-1) * at(1) - at(-2) * at(2))
            } else {
                let mut s = T::exact(0.0);
                for n in -m..=m {
                    let c = binom(2 * m as u32, (m - n) as u32) * if n % 2 == 0 { 1.0 } else { -1.0 };
                    s = s + at(-n) * at(n) * c;
                }
                s
            }
        }
        Btn1 | Btn2 | Btn3(_) | Btnd1 | Btnd2 | Btnd3(_) => {
            let deriv = matches!(id, Btnd1 | Btnd2 | Btnd3(_));
            let len = match id {
                Btn3(k) | Btnd3(k) => 2 * k as usize + 1,
                _ => 4,
            };
            let f: Vec<T> = (0..len)
                .map(|i| if deriv { jpt(nu + i as f64, x) } else { jt(nu + i as f64, x) })
                .collect::<Result<_>>()?;
            match id {
                Btn1 | Btnd1 => f[1].sq() - f[0] * f[2],
                Btn2 | Btnd2 => higher_order(&f),
                Btn3(k) | Btnd3(k) => patrick_sum(&f, 0, k as usize),
                _ => unreachable!(),
            }
        }
        Llag1(n) | Llag2(n, _) => {
            let (n, k, lo, hi) = match id {
                Llag2(n, k) => (n as usize, k as usize, n as usize, (n + 2 * k) as usize),
                _ => (n as usize, 1, n as usize - 1, n as usize + 1),
            };
            let o = Order::new(nu)?;
            let mut f = vec![T::exact(0.0); hi + 1];
            for (i, slot) in f.iter_mut().enumerate().skip(lo) {
                *slot = normalized_j(o, i as u32, x, prec)?.into();
            }
            match id {
                Llag1(_) => f[n].sq() - f[n - 1] * f[n + 1],
                _ => patrick_sum(&f, n, k),
            }
        }
        SzaszUpper | SzaszBox => {
            let nj = |s: f64| -> Result<T> { Ok(normalized_j(Order::new(s)?, 0, x, prec)?.into()) };
            let q = (nu + 1.0) * nj(nu)?.sq() - nu * (nj(nu - 1.0)? * nj(nu + 1.0)?);
            let upper = 1.0 - q;
            if id == SzaszUpper {
                upper
            } else {
                q.min(upper)
            }
        }
        Bound1 | BoundN1 | Bound3 | BoundN3 => {
            let c = if matches!(id, Bound1 | Bound3) { 1.0 } else { mu };
            let j0 = jt(nu, x)?;
            let xjp = jpt(nu, x)? * x;
            if matches!(id, Bound1 | BoundN1) {
                xjp.sq() + j0.sq() * (c * x * x - nu * nu)
            } else {
                if let Some(r) = near_zero(ZeroKind::JZero, nu, x, "J_ν")? {
                    return Ok(Node::Skip(r));
                }
                if x == ORIGIN {
                    // xJ′/J → ν, so both sides tend to ν²
                    T::exact(0.0)
                } else {
                    (xjp / j0).sq() - T::exact(nu * nu - c * x * x)
                }
            }
        }
        Bound2 | BoundN2 => {
            let c = if id == Bound2 { 1.0 } else { mu };
            let (jm, j0) = (jt(nu - 1.0, x)?, jt(nu, x)?);
            j0.sq() * (c * x) - 2.0 * nu * (jm * j0) + jm.sq() * x
        }
        Bound4 | BoundN4 => {
            let c = if id == Bound4 { 1.0 } else { mu };
            if c * x * x > nu * nu * (1.0 + 1e-15) {
                return outside();
            }
            if let Some(r) = near_zero(ZeroKind::JZero, nu, x, "J_ν")? {
                return Ok(Node::Skip(r));
            }
            let (jm, j0) = (jt(nu - 1.0, x)?, jt(nu, x)?);
            let root = (nu + (nu * nu - c * x * x).max(0.0).sqrt()) / x;
            jm / j0 - T { v: root, e: 4.0 * f64::EPSILON * root }
        }
        KsTuranDet(n) => turan_det(Order::new(nu)?, n as u32, x, prec)?.into(),
        KsHankelDet(n) => hankel_det_jtilde(Order::new(nu)?, n as u32, x, prec)?.into(),
        EquivLlag1 => {
            let (j0, j1, j2) = (jt(nu, x)?, jt(nu + 1.0, x)?, jt(nu + 2.0, x)?);
            j1.sq() - j0 * j2 + j0 * j1 / x
        }
        TuranY0 | TuranY1 | BoundY(1, _) => {
            let y0 = yt(nu, x)?;
            let xyp = ypt(nu, x)? * x;
            let psi = xyp.sq() + y0.sq() * (x * x - nu * nu);
            match id {
                BoundY(..) => psi,
                TuranY1 => psi / (x * x),
                _ => psi / (x * x) - y0.sq() / (1.0 - nu),
            }
        }
        BoundY(2, _) => {
            let (ym, y0) = (yt(nu - 1.0, x)?, yt(nu, x)?);
            y0.sq() * x - 2.0 * nu * (ym * y0) + ym.sq() * x
        }
        BoundY(3, _) => {
            if let Some(r) = near_zero(ZeroKind::YZero, nu, x, "Y_ν")? {
                return Ok(Node::Skip(r));
            }
            let xyp = ypt(nu, x)? * x;
            (xyp / yt(nu, x)?).sq() - T::exact(nu * nu - x * x)
        }
        BoundY(_, _) => {
            if x > nu {
                return outside();
            }
            if let Some(r) = near_zero(ZeroKind::YZero, nu - 1.0, x, "Y_{ν−1}")? {
                return Ok(Node::Skip(r));
            }
            let root = (nu + (nu * nu - x * x).max(0.0).sqrt()) / x;
            yt(nu, x)? / yt(nu - 1.0, x)? - T { v: root, e: 4.0 * f64::EPSILON * root }
        }
        Landau => {
            let j0 = jt(nu, x)?;
            let b = landau_bound() * nu.powf(-1.0 / 3.0);
            T { v: b - j0.v.abs(), e: j0.e + 4.0 * f64::EPSILON * b }
        }
    };
    Ok(Node::Value(v))
}

fn row_for(id: InequalityId, nu: f64, prec: &Precision) -> Result<Row> {
    if id.check_order(nu).is_err() {
        return Ok(Row { x_lo: None });
    }
    let x_lo = match id {
        InequalityId::TuranY0 | InequalityId::TuranY1 | InequalityId::BoundY(_, YDomain::Standard) => {
            find_x_nu(Order::new(nu)?, prec)?.x_nu
        }
        InequalityId::BoundY(_, YDomain::Widened) => {
            zero(ZeroKind::YZero, Order::new(nu - 1.0)?, 1, prec)?.x
        }
        _ => f64::NEG_INFINITY,
    };
    Ok(Row { x_lo: Some(x_lo) })
}

/// Evaluates the margin of `ineq` at every node of `grid`.
///
/// Orders outside the inequality's hypotheses are a domain error; nodes
/// outside the x-domain or within `1e−4 ×` the local zero spacing of a
/// denominator's zero are skipped and logged. Numeric failures at a node
/// are recorded as violations carrying the error name.
pub fn check_inequality(ineq: InequalityId, grid: &Grid, prec: &Precision) -> Result<InequalityReport> {
    for nu in grid.nu.nodes() {
        ineq.check_order(nu)?;
    }
    sweep(ineq, grid, prec)
}

/// As [`check_inequality`], but orders outside the hypotheses are skipped
/// rather than rejected.
pub fn check_inequality_lenient(
    ineq: InequalityId,
    grid: &Grid,
    prec: &Precision,
) -> Result<InequalityReport> {
    sweep(ineq, grid, prec)
}

fn sweep(ineq: InequalityId, grid: &Grid, prec: &Precision) -> Result<InequalityReport> {
    ineq.validate()?;
    let nus = grid.nu.nodes();
    let rows: Vec<Row> = nus.par_iter().map(|&nu| row_for(ineq, nu, prec)).collect::<Result<_>>()?;
    let xs = grid.x.nodes();
    let nodes: Vec<(usize, f64)> = (0..nus.len()).flat_map(|i| xs.iter().map(move |&x| (i, x))).collect();
    let results: Vec<(f64, f64, Result<Node>)> = nodes
        .par_iter()
        .map(|&(i, x)| (nus[i], x, margin(ineq, nus[i], x, rows[i], prec)))
        .collect();

    let mut points = Vec::with_capacity(results.len());
    let mut violations = Vec::new();
    let mut best: Option<(f64, f64, f64, f64)> = None;
    for (nu, x, r) in results {
        match r {
            Ok(Node::Value(t)) if t.v.is_finite() => {
                if t.v < -tolerance(t.e) {
                    violations.push(Violation { nu, x, residual: Some(t.v), error: None });
                }
                // strict comparison keeps the first (lowest ν, then x) on ties
                if best.map_or(true, |b| t.v < b.0) {
                    best = Some((t.v, t.e, nu, x));
                }
                points.push(PointMargin { nu, x, margin: Some(t.v), abs_err: Some(t.e), skipped: None });
            }
            Ok(Node::Value(t)) => {
                let msg = format!("NonConvergence: non-finite margin {}", t.v);
                violations.push(Violation { nu, x, residual: None, error: Some(msg.clone()) });
                points.push(PointMargin { nu, x, margin: None, abs_err: None, skipped: Some(msg) });
            }
            Ok(Node::Skip(reason)) => {
                points.push(PointMargin { nu, x, margin: None, abs_err: None, skipped: Some(reason) });
            }
            Err(e) => {
                violations.push(Violation { nu, x, residual: None, error: Some(e.to_string()) });
                points.push(PointMargin { nu, x, margin: None, abs_err: None, skipped: Some(e.name().into()) });
            }
        }
    }
    let certified = violations.is_empty() && best.is_some_and(|b| b.0 > -tolerance(b.1));
    let note = match ineq {
        InequalityId::TuranY0 => Some(
            "on x ≥ x_ν the left side is non-negative while 1/(1−ν) < 0, so the constant 1/(1−ν) \
             is not the best possible there"
                .into(),
        ),
        InequalityId::Landau => {
            let c = crate::bessel::landau_constants();
            Some(format!(
                "b_L = {} from the global maximum of Ai over ℝ; the maximum over ℝ₊ gives {}",
                c.global, c.positive_axis
            ))
        }
        _ => None,
    };
    Ok(InequalityReport {
        ineq,
        grid: *grid,
        min_margin: best.map(|b| b.0),
        argmin: best.map(|b| (b.2, b.3)),
        violations,
        certified,
        points,
        note,
    })
}

/// Natural-order instances: `Δ_n ≥ 0`, the higher-order and Patrick sums
/// for `J_n` and `J′_n`, n up to 6, k ∈ {1, 2}, t ∈ [0, 20].
pub fn natural_order_suite(prec: &Precision) -> Result<Vec<InequalityReport>> {
    use InequalityId::*;
    let t = Range::new(0.0, 20.0, 201)?;
    let cases = [
        (Turan1, Range::new(1.0, 6.0, 6)?),
        (Btn2, Range::new(0.0, 5.0, 6)?),
        (Btn3(1), Range::new(0.0, 6.0, 7)?),
        (Btn3(2), Range::new(0.0, 6.0, 7)?),
        (Btnd1, Range::new(0.0, 5.0, 6)?),
        (Btnd2, Range::new(0.0, 5.0, 6)?),
        (Btnd3(1), Range::new(0.0, 6.0, 7)?),
        (Btnd3(2), Range::new(0.0, 6.0, 7)?),
    ];
    cases.iter().map(|&(id, nu)| check_inequality(id, &Grid::new(nu, t), prec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(nu: &str, x: &str) -> Grid {
        Grid::new(nu.parse().unwrap(), x.parse().unwrap())
    }

    #[test]
    fn names_round_trip() {
        let ids = [
            "turan1", "turan2", "turan5", "salamt:2", "alsalam-m2", "btn1", "btn2", "btn3:2", "btnd1",
            "btnd2", "btnd3:1", "llag1:3", "llag2:0:2", "szasz-upper", "szasz-box", "bound1", "bound2",
            "bound3", "bound4", "boundn1", "boundn2", "boundn3", "boundn4", "ks-turandet:4",
            "ks-hankeldet:2", "equiv-llag1", "turany0", "turany1", "boundy3", "boundy4:widened", "landau",
        ];
        for s in ids {
            let id: InequalityId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(serde_json::from_str::<InequalityId>(&json).unwrap(), id);
        }
        for bad in ["btn3:5", "llag1:0", "ks-turandet:3", "salamt:7", "boundy5", "boundy", "x"] {
            assert!(bad.parse::<InequalityId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn turan2_sweep_certifies() {
        let r = check_inequality(InequalityId::Turan2, &grid("0.25:5:10", "0:20:41"), &Precision::default())
            .unwrap();
        assert!(r.certified, "{:?}", r.violations);
        assert_eq!(r.points.len(), 410);
    }

    #[test]
    fn orders_outside_domain_are_rejected() {
        let p = Precision::default();
        assert!(check_inequality(InequalityId::Turan2, &grid("-0.5:1:3", "1:2:2"), &p).is_err());
        assert!(check_inequality(InequalityId::TuranY1, &grid("1", "1:2:2"), &p).is_err());
    }

    #[test]
    fn patrick_k1_is_turanian() {
        let p = Precision::default();
        for &(nu, x) in &[(0.3, 2.0), (2.0, 7.5)] {
            let a = margin(InequalityId::Btn3(1), nu, x, Row { x_lo: Some(0.0) }, &p).unwrap();
            let b = margin(InequalityId::Btn1, nu, x, Row { x_lo: Some(0.0) }, &p).unwrap();
            match (a, b) {
                (Node::Value(a), Node::Value(b)) => assert!((a.v - b.v).abs() < 1e-15),
                _ => panic!("unexpected skip"),
            }
        }
    }

    #[test]
    fn equivalent_form_matches_normalised_form() {
        // 𝒥′² − 𝒥𝒥″ = c · (J²_{ν+1} − J_νJ_{ν+2} + J_νJ_{ν+1}/x), c > 0
        let p = Precision::default();
        let (nu, x) = (0.7, 3.3);
        let row = Row { x_lo: Some(0.0) };
        let (Node::Value(a), Node::Value(b)) = (
            margin(InequalityId::Llag1(1), nu, x, row, &p).unwrap(),
            margin(InequalityId::EquivLlag1, nu, x, row, &p).unwrap(),
        ) else {
            panic!("unexpected skip")
        };
        let c = 2.0 * 4f64.powf(nu) * crate::gamma::gamma(nu + 1.0) * crate::gamma::gamma(nu + 2.0)
            * x.powf(-2.0 * nu)
            / (2.0 * (nu + 1.0));
        assert!((a.v - c * b.v).abs() < 1e-12, "{} {}", a.v, c * b.v);
    }

    #[test]
    fn skips_near_denominator_zeros() {
        let p = Precision::default();
        let j01 = 2.404_825_557_695_773;
        let r = check_inequality(InequalityId::Bound3, &grid("0", &format!("{j01}")), &p).unwrap();
        assert_eq!(r.skipped(), 1);
        assert!(!r.certified);
    }
}
