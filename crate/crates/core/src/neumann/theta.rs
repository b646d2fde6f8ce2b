//! Coefficient functions `θ(v)` of second-kind Neumann series, the built-in
//! catalog and the `name:k=v,...` text form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::gamma::{digamma_any, ln_gamma_signed};

/// `scale · P(v) · Π Γ(α_i + β_i v) / Π Γ(γ_j + δ_j v)`, with `P` in
/// ascending powers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaQuotient {
    pub scale: f64,
    pub poly: Vec<f64>,
    pub num: Vec<(f64, f64)>,
    pub den: Vec<(f64, f64)>,
}

impl GammaQuotient {
    fn poly_at(&self, v: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for &c in self.poly.iter().rev() {
            dp = dp * v + p;
            p = p * v + c;
        }
        (p, dp)
    }

    /// Sign and log-magnitude of the Γ part; `None` on a numerator pole,
    /// `Some((0, −∞))` on a denominator pole.
    fn gamma_part(&self, v: f64) -> Option<(f64, f64)> {
        let mut sign = 1.0;
        let mut ln = 0.0;
        for &(a, b) in &self.num {
            let (s, l) = ln_gamma_signed(a + b * v)?;
            sign *= s;
            ln += l;
        }
        for &(c, d) in &self.den {
            match ln_gamma_signed(c + d * v) {
                Some((s, l)) => {
                    sign *= s;
                    ln -= l;
                }
                None => return Some((0.0, f64::NEG_INFINITY)),
            }
        }
        Some((sign, ln))
    }

    fn value(&self, v: f64) -> Result<f64> {
        let Some((s, ln)) = self.gamma_part(v) else {
            return Err(Error::NearPole(format!("θ has a Γ pole at v = {v}")));
        };
        Ok(self.scale * self.poly_at(v).0 * s * ln.exp())
    }

    fn ln_abs(&self, v: f64) -> f64 {
        let p = self.poly_at(v).0;
        match self.gamma_part(v) {
            Some((s, ln)) if s != 0.0 && p != 0.0 && self.scale != 0.0 => self.scale.abs().ln() + p.abs().ln() + ln,
            Some(_) => f64::NEG_INFINITY,
            None => f64::INFINITY,
        }
    }

    fn derivative(&self, v: f64) -> Result<f64> {
        let (p, dp) = self.poly_at(v);
        let Some((s, ln)) = self.gamma_part(v) else {
            return Err(Error::NearPole(format!("θ has a Γ pole at v = {v}")));
        };
        let mut psi = 0.0;
        for &(a, b) in &self.num {
            psi += b * digamma_any(a + b * v);
        }
        for &(c, d) in &self.den {
            psi -= d * digamma_any(c + d * v);
        }
        if s == 0.0 || !psi.is_finite() {
            // denominator pole: the Γ part vanishes but its slope need not
            let h = 1e-6 * v.abs().max(1.0);
            return Ok((self.value(v + h)? - self.value(v - h)?) / (2.0 * h));
        }
        Ok(self.scale * s * ln.exp() * (dp + p * psi))
    }
}

/// Closed form of `θ(v)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThetaExpr {
    Zero,
    Constant { c: f64 },
    /// `2ν / ((ν+v)(ν+v+2))`, the tail weight of the Thiruvenkatachar–Nanjundiah
    /// expansion with series orders shifted to `ν+1`.
    Tn10 { nu: f64 },
    /// `ν − 1 + 2v`
    Lommel { nu: f64 },
    /// `(ν+m−2+2v) (v)_{m−1} (ν+v)_{m−1}`
    AlSalam { m: u8, nu: f64 },
    GammaQuotient(GammaQuotient),
}

impl ThetaExpr {
    fn canonical(&self) -> GammaQuotient {
        let gq = |scale, poly: Vec<f64>, num, den| GammaQuotient { scale, poly, num, den };
        match *self {
            ThetaExpr::Zero => gq(0.0, vec![0.0], vec![], vec![]),
            ThetaExpr::Constant { c } => gq(c, vec![1.0], vec![], vec![]),
            ThetaExpr::Tn10 { nu } => {
                gq(2.0 * nu, vec![1.0], vec![(nu, 1.0), (nu + 2.0, 1.0)], vec![(nu + 1.0, 1.0), (nu + 3.0, 1.0)])
            }
            ThetaExpr::Lommel { nu } => gq(1.0, vec![nu - 1.0, 2.0], vec![], vec![]),
            ThetaExpr::AlSalam { m, nu } => {
                let m = m as f64;
                gq(
                    1.0,
                    vec![nu + m - 2.0, 2.0],
                    vec![(m - 1.0, 1.0), (nu + m - 1.0, 1.0)],
                    vec![(0.0, 1.0), (nu, 1.0)],
                )
            }
            ThetaExpr::GammaQuotient(ref g) => g.clone(),
        }
    }
}

/// A coefficient function together with its catalog metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaSpec {
    pub name: String,
    pub expr: ThetaExpr,
    pub params: Vec<(String, f64)>,
    pub rho_analytic: Option<f64>,
    /// Catalog flag for the absolute-convergence hypothesis of the integral
    /// representation.
    pub admissible: bool,
    pub experimental: bool,
}

impl ThetaSpec {
    pub fn new(expr: ThetaExpr) -> Self {
        ThetaSpec { name: "custom".into(), expr, params: Vec::new(), rho_analytic: None, admissible: true, experimental: false }
    }

    pub fn theta(&self, v: f64) -> Result<f64> {
        if let ThetaExpr::Zero = self.expr {
            return Ok(0.0);
        }
        self.expr.canonical().value(v)
    }

    pub fn theta_prime(&self, v: f64) -> Result<f64> {
        if let ThetaExpr::Zero = self.expr {
            return Ok(0.0);
        }
        self.expr.canonical().derivative(v)
    }

    /// `ln|θ(n)|`, finite where `θ` is.
    pub fn ln_abs(&self, v: f64) -> f64 {
        if let ThetaExpr::Zero = self.expr {
            return f64::NEG_INFINITY;
        }
        self.expr.canonical().ln_abs(v)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.expr, ThetaExpr::Zero) || matches!(self.expr, ThetaExpr::Constant { c } if c == 0.0)
    }
}

/// A built-in weight with the series parameters it is meant for.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeumannInstance {
    pub theta: ThetaSpec,
    pub mu: f64,
    pub nu: f64,
    pub a: f64,
    pub b: f64,
}

/// Catalog entry as listed by [`builtin_thetas`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub admissible: bool,
    pub experimental: bool,
    pub series: &'static str,
}

pub fn builtin_thetas() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry { name: "zero", params: "", admissible: true, experimental: false, series: "0" },
        CatalogEntry { name: "const", params: "c, nu", admissible: false, experimental: false, series: "c Σ J_{ν+n}²" },
        CatalogEntry {
            name: "tn10",
            params: "nu",
            admissible: true,
            experimental: false,
            series: "Σ 2ν J²_{ν+1+n} / ((ν+n)(ν+n+2))",
        },
        CatalogEntry {
            name: "n9",
            params: "nu",
            admissible: true,
            experimental: true,
            series: "alsalam with m = 0",
        },
        CatalogEntry {
            name: "lommel",
            params: "nu",
            admissible: false,
            experimental: false,
            series: "Σ (ν−1+2n) J²_{ν−1+2n} = x²Δ_ν/4",
        },
        CatalogEntry {
            name: "alsalam",
            params: "m, nu",
            admissible: false,
            experimental: false,
            series: "Σ (ν+m−2+2n)(n)_{m−1}(ν+n)_{m−1} J²_{ν+m−2+2n}",
        },
    ]
}

fn param(params: &[(String, f64)], key: &str) -> Result<f64> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| Error::Parse(format!("missing parameter {key:?}")))
}

fn parse_params(s: &str) -> Result<Vec<(String, f64)>> {
    let mut out: Vec<(String, f64)> = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse(format!("parameter {item:?} is not k=v")))?;
        let k = k.trim().to_ascii_lowercase();
        let v: f64 = v.trim().parse().map_err(|_| Error::Parse(format!("parameter {k:?} is not a number")))?;
        if !v.is_finite() {
            return Err(Error::Parse(format!("parameter {k:?} must be finite")));
        }
        if out.iter().any(|(q, _)| *q == k) {
            return Err(Error::Parse(format!("parameter {k:?} given twice")));
        }
        out.push((k, v));
    }
    Ok(out)
}

/// Builds a catalog instance from its name and `k=v` parameters.
pub fn builtin(name: &str, params: &[(String, f64)]) -> Result<NeumannInstance> {
    let name = name.trim().to_ascii_lowercase();
    let allowed: &[&str] = match name.as_str() {
        "zero" => &["nu"],
        "const" => &["c", "nu"],
        "tn10" | "n9" | "lommel" => &["nu"],
        "alsalam" => &["m", "nu"],
        _ => return Err(Error::Parse(format!("unknown theta {name:?}"))),
    };
    if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        return Err(Error::Parse(format!("theta {name:?} takes no parameter {k:?}")));
    }
    let nu = match name.as_str() {
        "zero" | "const" => params.iter().find(|(k, _)| k == "nu").map_or(0.0, |p| p.1),
        _ => param(params, "nu")?,
    };
    let spec = |expr, rho: Option<f64>, admissible, experimental| ThetaSpec {
        name: name.clone(),
        expr,
        params: params.to_vec(),
        rho_analytic: rho,
        admissible,
        experimental,
    };
    let inst = match name.as_str() {
        "zero" => NeumannInstance { theta: spec(ThetaExpr::Zero, Some(0.0), true, false), mu: nu, nu, a: 1.0, b: 1.0 },
        "const" => {
            let c = param(params, "c")?;
            NeumannInstance { theta: spec(ThetaExpr::Constant { c }, Some(0.0), c == 0.0, false), mu: nu, nu, a: 1.0, b: 1.0 }
        }
        "tn10" => {
            if !(nu > 0.0) {
                return domain(format!("tn10 requires nu > 0, got {nu}"));
            }
            let t = spec(ThetaExpr::Tn10 { nu }, Some(0.0), true, false);
            NeumannInstance { theta: t, mu: nu + 1.0, nu: nu + 1.0, a: 1.0, b: 1.0 }
        }
        "lommel" => {
            if !(nu > -1.0) {
                return domain(format!("lommel requires nu > -1, got {nu}"));
            }
            let t = spec(ThetaExpr::Lommel { nu }, Some(0.0), false, false);
            NeumannInstance { theta: t, mu: nu - 1.0, nu: nu - 1.0, a: 2.0, b: 2.0 }
        }
        "alsalam" | "n9" => {
            let m = if name == "n9" { 0.0 } else { param(params, "m")? };
            if !(m.fract() == 0.0 && (0.0..=6.0).contains(&m)) {
                return domain(format!("alsalam index must be an integer in 0..=6, got {m}"));
            }
            if !(nu > -1.0) {
                return domain(format!("{name} requires nu > -1, got {nu}"));
            }
            let m = m as u8;
            let t = spec(ThetaExpr::AlSalam { m, nu }, Some(0.0), m == 0, name == "n9");
            let mu = nu + m as f64 - 2.0;
            NeumannInstance { theta: t, mu, nu: mu, a: 2.0, b: 2.0 }
        }
        _ => unreachable!(),
    };
    Ok(inst)
}

impl FromStr for NeumannInstance {
    type Err = Error;

    /// `name` or `name:k=v,k=v`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        builtin(name, &parse_params(rest)?)
    }
}

impl fmt::Display for NeumannInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.theta.name)?;
        for (i, (k, v)) in self.theta.params.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

/// Parses the `--params` form `k=v,k=v`.
pub fn parse_theta_params(s: &str) -> Result<Vec<(String, f64)>> {
    parse_params(s)
}
