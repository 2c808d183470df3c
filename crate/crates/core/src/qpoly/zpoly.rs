//! Helpers on integer polynomials stored as ascending `Vec<BigInt>`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn lc(p: &[BigInt]) -> BigInt {
    p.last().cloned().unwrap_or_else(BigInt::zero)
}

pub fn content(p: &[BigInt]) -> BigInt {
    crate::modp::gcd_slice(p)
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(p: &[BigInt]) -> ZPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut c = content(p);
    if lc(p).is_negative() {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

pub fn scale_div(p: &[BigInt], d: &BigInt) -> ZPoly {
    p.iter().map(|x| x / d).collect()
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn derivative(p: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn prem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = degree(b).expect("pseudo-division by zero");
    let mut r: ZPoly = a.to_vec();
    if r.len() <= db {
        return r;
    }
    let lb = lc(b);
    let mut e = r.len() - db;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = lc(&r);
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = num_traits::pow(lb, e);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Exact division over Z; `None` if `b` does not divide `a` in Z[X].
pub fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    let da = degree(a)?;
    if da < db {
        return None;
    }
    let lb = lc(b);
    let mut r: ZPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[k + j] -= &c * bc;
            }
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Max-norm of the coefficients.
pub fn max_norm(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}
