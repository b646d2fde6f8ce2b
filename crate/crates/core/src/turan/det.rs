use crate::bessel::jtilde;
use crate::error::{domain, Result};
use crate::turan::jx;
use crate::types::{Eval, Method, Order, Precision};

/// Determinant by Gaussian elimination with partial pivoting, with an error
/// estimate relative to the Hadamard bound `Π_i ‖row_i‖`.
pub(crate) fn det_with_err(mut a: Vec<Vec<f64>>, entry_err: f64) -> (f64, f64) {
    let n = a.len();
    let hadamard: f64 = a.iter().map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt()).product();
    let min_row = a
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(f64::INFINITY, f64::min);
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap_or(c);
        if a[p][c] == 0.0 {
            det = 0.0;
            break;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in (c + 1)..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    let rel = (n * n) as f64 * f64::EPSILON + n as f64 * entry_err / min_row.max(1e-300);
    (det, rel * hadamard)
}

fn check_size(n: u32) -> Result<()> {
    if n == 0 || n % 2 != 0 || n > 6 {
        return domain(format!("determinant size must be 2, 4 or 6, got {n}"));
    }
    Ok(())
}

fn sign(n: u32) -> f64 {
    if (n / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(−1)^{n/2} det[J_{ν+i+j}(x)]_{i,j<n}`; for `n = 2` this is `Δ_{ν+1}(x)`.
pub fn turan_det(nu: Order, n: u32, x: f64, _prec: &Precision) -> Result<Eval> {
    nu.require_gt(-1.0, "Turán determinant")?;
    check_size(n)?;
    let o = nu.value();
    let mut vals = Vec::with_capacity(2 * n as usize);
    let mut err = 0.0_f64;
    for k in 0..(2 * n - 1) {
        let e = jx(o + k as f64, x)?;
        err = err.max(e.abs_err);
        vals.push(e.value);
    }
    let m = (0..n as usize).map(|i| (0..n as usize).map(|j| vals[i + j]).collect()).collect();
    let (d, e) = det_with_err(m, err);
    Ok(Eval::new(sign(n) * d, e, Method::PowerSeries))
}

/// `(−1)^{n/2} det[J̃_ν^{(i+j)}(x)]_{i,j<n}`.
pub fn hankel_det_jtilde(nu: Order, n: u32, x: f64, prec: &Precision) -> Result<Eval> {
    nu.require_gt(-1.0, "Hankel determinant")?;
    check_size(n)?;
    let mut vals = Vec::with_capacity(2 * n as usize);
    let mut err = 0.0_f64;
    for k in 0..(2 * n - 1) {
        let e = jtilde(nu, k, x, prec)?;
        err = err.max(e.abs_err);
        vals.push(e.value);
    }
    let m = (0..n as usize).map(|i| (0..n as usize).map(|j| vals[i + j]).collect()).collect();
    let (d, e) = det_with_err(m, err);
    Ok(Eval::new(sign(n) * d, e, Method::PowerSeries))
}
