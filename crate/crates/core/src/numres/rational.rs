//! Continued-fraction recovery of rationals from floating approximations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bigfloat::BigFloat;
use super::complex::Complex;
use crate::qpoly::{QPoly, Rat};

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// Tolerance exponent: a match must hold to three quarters of the working
/// digits, while denominators stay below a quarter of them.
fn bounds(digits: u32) -> (u32, BigInt) {
    ((3 * digits).div_ceil(4), pow10(digits / 4))
}

fn scale_rat(log2_scale: f64) -> Rat {
    let k = log2_scale.max(0.0).ceil() as usize;
    Rat::from_integer(BigInt::one() << k)
}

/// Best convergent of `x` with denominator under the bound and error under
/// `tol`.
fn convergent(x: &Rat, tol: &Rat, qmax: &BigInt) -> Option<Rat> {
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rem = x.clone();
    loop {
        let a = rem.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if &q2 >= qmax {
            return None;
        }
        let c = Rat::new(p2.clone(), q2.clone());
        if (&c - x).abs() < *tol {
            return Some(c);
        }
        let frac = &rem - Rat::from_integer(a);
        if frac.is_zero() {
            return None;
        }
        rem = frac.recip();
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}

/// Rational `p/q` within `10^(-3·digits/4)·max(1,|x|)` of `x` with
/// `q < 10^(digits/4)`.
pub fn rationalize(x: &BigFloat, digits: u32) -> Option<Rat> {
    rationalize_scaled(x, x.log2_abs(), digits)
}

/// As [`rationalize`], measuring the error against `2^log2_scale` instead of `|x|`.
pub fn rationalize_scaled(x: &BigFloat, log2_scale: f64, digits: u32) -> Option<Rat> {
    let (e, qmax) = bounds(digits);
    let tol = scale_rat(log2_scale) / Rat::from_integer(pow10(e));
    let xr = x.to_rat();
    if xr.abs() < tol {
        return Some(Rat::zero());
    }
    convergent(&xr, &tol, &qmax)
}

/// Rationalizes every coefficient of a complex polynomial whose imaginary
/// parts are negligible against the largest coefficient.
pub fn rationalize_poly(coeffs: &[Complex], digits: u32) -> Option<QPoly> {
    let scale = coeffs.iter().map(|c| c.log2_abs()).fold(0.0f64, f64::max);
    let (e, _) = bounds(digits);
    let tol_log2 = scale - e as f64 * std::f64::consts::LOG2_10;
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if c.im.log2_abs() >= tol_log2 {
            return None;
        }
        out.push(rationalize_scaled(&c.re, scale, digits)?);
    }
    Some(QPoly::from_coeffs(out))
}
