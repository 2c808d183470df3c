//! Subresultant gcd and resultant over Z, lifted to Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::zpoly::{self, ZPoly};
use super::{QPoly, Rat};

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (_, za) = a.primitive_integer();
    let (_, zb) = b.primitive_integer();
    QPoly::from_bigints(&zgcd(za, zb)).monic()
}

/// Primitive gcd of two nonzero integer polynomials by the subresultant PRS.
pub fn zgcd(mut a: ZPoly, mut b: ZPoly) -> ZPoly {
    if b.len() > a.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_empty() {
        return zpoly::primitive_part(&a);
    }
    a = zpoly::primitive_part(&a);
    b = zpoly::primitive_part(&b);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.len() - b.len();
        let r = zpoly::prem(&a, &b);
        if r.is_empty() {
            return zpoly::primitive_part(&b);
        }
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        a = b;
        let d = &g * num_traits::pow(h.clone(), delta);
        b = zpoly::scale_div(&r, &d);
        g = zpoly::lc(&a);
        h = next_h(&h, &g, delta);
    }
}

// h^(1-delta) * g^delta, exact.
fn next_h(h: &BigInt, g: &BigInt, delta: usize) -> BigInt {
    match delta {
        0 => h.clone(),
        1 => g.clone(),
        _ => num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1),
    }
}

pub fn resultant(a: &QPoly, b: &QPoly) -> Rat {
    if a.is_zero() || b.is_zero() {
        return Rat::zero();
    }
    let (ua, za) = a.primitive_integer();
    let (ub, zb) = b.primitive_integer();
    let scale = num_traits::pow(ua, b.deg()) * num_traits::pow(ub, a.deg());
    scale * Rat::from_integer(zresultant(za, zb))
}

/// Resultant of two nonzero integer polynomials by the subresultant algorithm.
pub fn zresultant(mut a: ZPoly, mut b: ZPoly) -> BigInt {
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let ca = zpoly::content(&a);
    let cb = zpoly::content(&b);
    a = zpoly::scale_div(&a, &ca);
    b = zpoly::scale_div(&b, &cb);
    let da0 = a.len() - 1;
    let db0 = b.len() - 1;
    let t = num_traits::pow(ca, db0) * num_traits::pow(cb, da0);
    let mut s = BigInt::one();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if da0.is_odd() && db0.is_odd() {
            s = -s;
        }
    }
    if b.len() == 1 {
        return s * t * num_traits::pow(b[0].clone(), a.len() - 1);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = da - db;
        if da.is_odd() && db.is_odd() {
            s = -s;
        }
        let r = zpoly::prem(&a, &b);
        a = b;
        let d = &g * num_traits::pow(h.clone(), delta);
        b = zpoly::scale_div(&r, &d);
        g = zpoly::lc(&a);
        h = next_h(&h, &g, delta);
        if b.is_empty() {
            return BigInt::zero();
        }
        if b.len() == 1 {
            break;
        }
    }
    let da = a.len() - 1;
    let hn = num_traits::pow(b[0].clone(), da) / num_traits::pow(h, da - 1);
    s * t * hn
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::int;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    // Sylvester determinant by fraction-free elimination, as an oracle.
    fn sylvester(a: &QPoly, b: &QPoly) -> Rat {
        let (m, n) = (a.deg(), b.deg());
        let size = m + n;
        let mut rows = vec![vec![Rat::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                rows[i][i + j] = a.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                rows[n + i][i + j] = b.coeff(n - j);
            }
        }
        let mut det = Rat::one();
        for c in 0..size {
            let piv = match (c..size).find(|&r| !rows[r][c].is_zero()) {
                Some(r) => r,
                None => return Rat::zero(),
            };
            if piv != c {
                rows.swap(piv, c);
                det = -det;
            }
            det *= rows[c][c].clone();
            for r in c + 1..size {
                let f = &rows[r][c] / &rows[c][c];
                for k in c..size {
                    let v = &f * &rows[c][k];
                    rows[r][k] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        let f = p(&[6, -4, 2]);
        assert_eq!(gcd(&f, &f), f.monic());
        let x5 = p(&[5, 1]);
        let g = p(&[1, 0, 1]);
        let h = p(&[-7, 1]);
        let lhs = &(&x5.pow(3) * &g);
        let rhs = &(&x5 * &h);
        assert_eq!(gcd(lhs, rhs), x5);
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases = [
            (p(&[1, 2, 3, 4]), p(&[-5, 0, 7])),
            (p(&[3, 0, 0, 0, 0, 1]), p(&[0, 0, 0, 0, 5])),
            (p(&[2, 1]), p(&[9, 9, 9, 9])),
            (p(&[1, 0, -2, 0, 1]), p(&[0, -4, 0, 4])),
        ];
        for (a, b) in cases {
            assert_eq!(resultant(&a, &b), sylvester(&a, &b), "{a} {b}");
            assert_eq!(resultant(&b, &a), sylvester(&b, &a), "{b} {a}");
        }
    }

    #[test]
    fn discriminants() {
        // X^2 + bX + c
        assert_eq!(p(&[7, 3, 1]).discriminant(), int(9 - 28));
        // X^3 + X + 1
        assert_eq!(p(&[1, 1, 0, 1]).discriminant(), int(-31));
        assert_eq!(p(&[1, -2, 1]).discriminant(), int(0));
    }
}
