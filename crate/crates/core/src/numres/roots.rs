//! Aberth-Ehrlich simultaneous root finding.

use super::bigfloat::{bits_for_digits, BigFloat};
use super::complex::{horner, Complex};
use super::MAX_DIGITS;
use crate::error::{Error, Result};
use crate::qpoly::QPoly;

fn complex_coeffs(p: &QPoly, prec: u64) -> Vec<Complex> {
    p.coeffs().iter().map(|c| Complex::from_rat(c, prec)).collect()
}

fn derivative(c: &[Complex]) -> Vec<Complex> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, x)| x * &Complex::from_i64(i as i64, x.prec()))
        .collect()
}

// Points on a circle of radius twice the Fujiwara bound, off the real axis.
fn seeds(c: &[Complex], prec: u64) -> Vec<Complex> {
    let n = c.len() - 1;
    let ln = c[n].log2_abs();
    let mut log_r = f64::NEG_INFINITY;
    for (k, ck) in c.iter().enumerate().take(n) {
        let l = ck.log2_abs();
        if l.is_finite() {
            log_r = log_r.max((l - ln) / (n - k) as f64);
        }
    }
    if !log_r.is_finite() {
        log_r = 0.0;
    }
    let log_r = log_r + 2.0;
    let whole = log_r.floor();
    let frac = (log_r - whole).exp2();
    (0..n)
        .map(|k| {
            let ang = std::f64::consts::TAU * k as f64 / n as f64 + 0.7;
            let z = Complex::from_f64(frac * ang.cos(), frac * ang.sin(), prec);
            Complex::new(z.re.mul_pow2(whole as i64), z.im.mul_pow2(whole as i64))
        })
        .collect()
}

/// Runs Aberth iterations; returns the approximations and whether the last
/// corrections fell below the working precision.
fn aberth(c: &[Complex], mut z: Vec<Complex>, prec: u64, max_iter: usize) -> (Vec<Complex>, bool) {
    let dc = derivative(c);
    let n = z.len();
    let one = Complex::from_i64(1, prec);
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        let mut all_small = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let pv = horner(c, &z[k]);
            if pv.is_zero() {
                done[k] = true;
                continue;
            }
            let dv = horner(&dc, &z[k]);
            let ratio = &pv / &dv;
            let mut sum = Complex::zero(prec);
            for j in 0..n {
                if j != k {
                    let diff = &z[k] - &z[j];
                    if !diff.is_zero() {
                        sum = &sum + &(&one / &diff);
                    }
                }
            }
            let denom = &one - &(&ratio * &sum);
            let w = if denom.is_zero() { ratio } else { &ratio / &denom };
            let scale = z[k].log2_abs().max(0.0);
            if w.log2_abs() > scale - prec as f64 + 12.0 {
                all_small = false;
            } else {
                done[k] = true;
            }
            z[k] = &z[k] - &w;
        }
        if all_small {
            return (z, true);
        }
    }
    (z, false)
}

fn residuals_ok(c: &[Complex], roots: &[Complex], digits: u32) -> bool {
    let slack = (digits as f64 - 10.0) * std::f64::consts::LOG2_10;
    roots.iter().all(|r| {
        let lr = r.log2_abs();
        let scale = c
            .iter()
            .enumerate()
            .map(|(i, ci)| ci.log2_abs() + i as f64 * if lr.is_finite() { lr } else { 0.0 })
            .fold(f64::NEG_INFINITY, f64::max);
        horner(c, r).log2_abs() < scale - slack
    })
}

/// All complex roots of `p` to roughly `digits` decimal digits, escalating
/// precision when the residual test fails.
pub fn find_roots(p: &QPoly, digits: u32) -> Result<Vec<Complex>> {
    let n = p.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    let c0 = complex_coeffs(p, 80);
    let (coarse, _) = aberth(&c0, seeds(&c0, 80), 80, 2000);
    let mut digits = digits.max(20);
    let mut start = coarse;
    loop {
        let prec = bits_for_digits(digits);
        let c = complex_coeffs(p, prec);
        let z0: Vec<Complex> = start.iter().map(|z| z.with_prec(prec)).collect();
        let (z, conv) = aberth(&c, z0, prec, 200);
        if conv && residuals_ok(&c, &z, digits) {
            return Ok(z);
        }
        if digits >= MAX_DIGITS {
            return Err(Error::PrecisionExhausted(digits));
        }
        start = z;
        digits = (digits * 2).min(MAX_DIGITS);
    }
}

/// Roots as reals when every imaginary part is negligible.
pub fn real_parts(roots: &[Complex], digits: u32) -> Option<Vec<BigFloat>> {
    let tol = -(digits as f64) * 0.5 * std::f64::consts::LOG2_10;
    roots
        .iter()
        .map(|r| {
            let scale = r.log2_abs().max(0.0);
            if r.im.log2_abs() < scale + tol {
                Some(r.re.clone())
            } else {
                None
            }
        })
        .collect()
}
