//! Rational roots by p-adic lifting.
//!
//! A rational root `a/b` of a primitive squarefree `P` with `l ∤ lc(P)` reduces
//! to a simple root mod `l`. Each simple root mod `l` is Newton-lifted until
//! the modulus exceeds twice the bound on `lc·a/b`, the symmetric residue of
//! `lc·r` gives the only possible candidate, and the candidate is checked
//! exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::zpoly::{self, ZPoly};
use super::{QPoly, Rat};
use crate::modp::{self, bigint_mod};

pub fn rational_roots(f: &QPoly) -> Vec<(Rat, u32)> {
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        let (_, z) = part.primitive_integer();
        for r in squarefree_roots(&z) {
            out.push((r, mult));
        }
    }
    out.sort();
    out
}

/// Rational roots of a squarefree primitive integer polynomial.
pub fn squarefree_roots(p: &[BigInt]) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut p: ZPoly = p.to_vec();
    if p.len() <= 1 {
        return out;
    }
    // Strip the root at zero so the constant term is nonzero.
    if p[0].is_zero() {
        out.push(Rat::zero());
        let k = p.iter().position(|c| !c.is_zero()).unwrap();
        p.drain(..k);
        if p.len() <= 1 {
            return out;
        }
    }
    if p.len() == 2 {
        out.push(Rat::new(-p[0].clone(), p[1].clone()));
        return out;
    }
    let lc = zpoly::lc(&p);
    let bound = lc.abs() + zpoly::max_norm(&p);
    let target = &bound * 2u32;
    let ell = match good_prime(&p) {
        Some(l) => l,
        None => return divisor_candidates(&p, out),
    };
    let residues: Vec<u64> = p.iter().map(|c| bigint_mod(c, ell)).collect();
    let dp = zpoly::derivative(&p);
    for r0 in modp::roots_mod(&residues, ell) {
        let mut r = BigInt::from(r0);
        let mut m = BigInt::from(ell);
        while m <= target {
            m = &m * &m;
            let fv = zpoly::eval(&p, &r).mod_floor(&m);
            let dv = zpoly::eval(&dp, &r).mod_floor(&m);
            let inv = match mod_inverse(&dv, &m) {
                Some(i) => i,
                None => break,
            };
            r = (r - fv * inv).mod_floor(&m);
        }
        let num = modp::symmetric_mod(&(&lc * &r), &m);
        let cand = Rat::new(num, lc.clone());
        if eval_zero(&p, &cand) {
            out.push(cand);
        }
    }
    out
}

fn eval_zero(p: &[BigInt], x: &Rat) -> bool {
    // Homogenized integer evaluation avoids rational normalization.
    let (a, b) = (x.numer(), x.denom());
    let n = p.len() - 1;
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    let mut apow: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut t = BigInt::one();
    for _ in 0..=n {
        apow.push(t.clone());
        t *= a;
    }
    for i in (0..=n).rev() {
        acc += &p[i] * &apow[i] * &bpow;
        bpow *= b;
    }
    acc.is_zero()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// A prime not dividing the leading coefficient for which `p mod l` stays
/// squarefree.
fn good_prime(p: &[BigInt]) -> Option<u64> {
    let deg = p.len() - 1;
    let mut l = 3u64;
    for _ in 0..200 {
        while !modp::is_prime(l) {
            l += 2;
        }
        let res: Vec<u64> = p.iter().map(|c| bigint_mod(c, l)).collect();
        if res[deg] != 0 && crate::zfactor::fp::is_squarefree(&res, l) {
            return Some(l);
        }
        l += 2;
    }
    None
}

// Last-resort path when no good prime is found in the first candidates.
fn divisor_candidates(p: &[BigInt], mut out: Vec<Rat>) -> Vec<Rat> {
    out.extend(divisor_roots(p));
    out
}

/// Classic candidate enumeration `±d/e` with `d | c0`, `e | lc`. Only usable
/// for small coefficients; kept as the test oracle and fallback.
pub fn divisor_roots(p: &[BigInt]) -> Vec<Rat> {
    let c0 = p[0].abs();
    let cn = zpoly::lc(p).abs();
    let mut out = Vec::new();
    if c0.is_zero() {
        return out;
    }
    for d in divisors(&c0) {
        for e in divisors(&cn) {
            for s in [1i32, -1] {
                let r = Rat::new(&d * BigInt::from(s), e.clone());
                if eval_zero(p, &r) && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{int, rat};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(p(&[5, 1]).pow(3).rational_roots(), vec![(int(-5), 3)]);
        assert!(p(&[150, -15, 1]).rational_roots().is_empty());
        assert_eq!(p(&[0, 0, -2, 1]).rational_roots(), vec![(int(0), 2), (int(2), 1)]);
    }

    #[test]
    fn non_integral_roots() {
        let f = QPoly::from_roots(&[rat(3, 7), rat(-5, 2), rat(1, 1)]);
        let roots: Vec<Rat> = f.rational_roots().into_iter().map(|(r, _)| r).collect();
        assert_eq!(roots, vec![rat(-5, 2), rat(3, 7), rat(1, 1)]);
    }

    #[test]
    fn large_constant_term() {
        let big = Rat::new(BigInt::from(10).pow(22) + 7, BigInt::from(3));
        let f = &QPoly::from_roots(std::slice::from_ref(&big)) * &p(&[1, 0, 1]);
        assert_eq!(f.rational_roots(), vec![(big, 1)]);
    }

    proptest! {
        #[test]
        fn agrees_with_divisor_enumeration(
            roots in prop::collection::vec((-30i64..30, 1i64..12), 0..4),
            extra in prop::collection::vec(-20i64..20, 1..4),
        ) {
            let rs: Vec<Rat> = roots.iter().map(|&(a, b)| rat(a, b)).collect();
            let mut extra = extra;
            extra.push(1);
            let f = &QPoly::from_roots(&rs) * &QPoly::from_ints(&extra);
            let got: Vec<Rat> = f.rational_roots().into_iter().map(|(r, _)| r).collect();
            let (_, z) = f.primitive_integer();
            let mut z = z;
            let mut want = Vec::new();
            if !z.is_empty() && z[0].is_zero() {
                want.push(Rat::zero());
                let k = z.iter().position(|c| !c.is_zero()).unwrap();
                z.drain(..k);
            }
            if z.len() > 1 {
                want.extend(divisor_roots(&z));
            }
            want.sort();
            want.dedup();
            prop_assert_eq!(got, want);
        }
    }
}
