//! Tschirnhausen coefficients from a Vandermonde solve.

use super::complex::Complex;
use crate::error::{Error, Result};

/// `u` with `β_i = Σ_j u_j α_i^j`.
#[derive(Clone, Debug)]
pub struct TschirnCoeffs {
    pub u: Vec<Complex>,
}

impl TschirnCoeffs {
    pub fn apply(&self, alpha: &Complex) -> Complex {
        super::complex::horner(&self.u, alpha)
    }
}

/// Gaussian elimination with partial pivoting; checks the residual.
pub fn tschirnhausen_coefficients(alpha: &[Complex], beta: &[Complex], digits: u32) -> Result<TschirnCoeffs> {
    let n = alpha.len();
    assert_eq!(n, beta.len(), "root lists differ in length");
    let prec = alpha.iter().chain(beta).map(|z| z.prec()).max().unwrap_or(64);
    let mut m: Vec<Vec<Complex>> = alpha
        .iter()
        .zip(beta)
        .map(|(a, b)| {
            let mut row = Vec::with_capacity(n + 1);
            let mut pw = Complex::from_i64(1, prec);
            for _ in 0..n {
                row.push(pw.clone());
                pw = &pw * a;
            }
            row.push(b.clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].log2_abs().total_cmp(&m[j][col].log2_abs()))
            .unwrap();
        if m[piv][col].is_zero() {
            return Err(Error::IllConditioned);
        }
        m.swap(col, piv);
        for r in col + 1..n {
            let f = &m[r][col] / &m[col][col];
            for c in col..=n {
                let d = &f * &m[col][c];
                m[r][c] = &m[r][c] - &d;
            }
        }
    }
    let mut u = vec![Complex::zero(prec); n];
    for r in (0..n).rev() {
        let mut acc = m[r][n].clone();
        for c in r + 1..n {
            acc = &acc - &(&m[r][c] * &u[c]);
        }
        u[r] = &acc / &m[r][r];
    }
    let out = TschirnCoeffs { u };
    let tol = -(digits as f64) * 0.5 * std::f64::consts::LOG2_10;
    for (a, b) in alpha.iter().zip(beta) {
        let err = (&out.apply(a) - b).log2_abs();
        if err > tol + b.log2_abs().max(0.0) {
            return Err(Error::IllConditioned);
        }
    }
    Ok(out)
}
