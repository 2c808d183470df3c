//! Word-sized prime field arithmetic.
//!
//! Used by the Zassenhaus factorizer, the p-adic rational root finder and the
//! grid-search prefilters. Primes are assumed to be below 2^32 so that every
//! product of two residues fits in a `u64`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::qpoly::Rat;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse by Fermat; `p` must be prime.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

pub fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    n.mod_floor(&m).to_u64().unwrap()
}

pub fn i64_mod(n: i64, p: u64) -> u64 {
    n.rem_euclid(p as i64) as u64
}

/// Reduction of a rational; `None` when `p` divides the denominator.
pub fn rat_mod(r: &Rat, p: u64) -> Option<u64> {
    let d = bigint_mod(r.denom(), p);
    let dinv = inv_mod(d, p)?;
    Some(bigint_mod(r.numer(), p) * dinv % p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The first `count` primes that are `>= start`.
pub fn primes_from(start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = start.max(2);
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Horner evaluation of an ascending coefficient vector.
#[inline]
pub fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Whether the reduced polynomial has a root in F_p, by exhaustive scan.
pub fn has_root_mod(coeffs: &[u64], p: u64) -> bool {
    if coeffs.iter().all(|&c| c == 0) {
        return true;
    }
    (0..p).any(|x| eval_mod(coeffs, x, p) == 0)
}

pub fn roots_mod(coeffs: &[u64], p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval_mod(coeffs, x, p) == 0).collect()
}

/// A residue carrying its modulus, so closed-form coefficient formulas can be
/// evaluated generically over Q and over F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Fp { v: i64_mod(v, p), p }
    }

    pub fn from_rat(r: &Rat, p: u64) -> Option<Self> {
        rat_mod(r, p).map(|v| Fp { v, p })
    }

    pub fn inv(self) -> Option<Self> {
        inv_mod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, o: Fp) -> Fp {
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, o: Fp) -> Fp {
        Fp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v }, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, o: Fp) -> Fp {
        Fp { v: self.v * o.v % self.p, p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

/// Symmetric residue of `n` modulo `m` in `(-m/2, m/2]`.
pub fn symmetric_mod(n: &BigInt, m: &BigInt) -> BigInt {
    let r = n.mod_floor(m);
    let half: BigInt = m >> 1u32;
    if r > half {
        r - m
    } else {
        r
    }
}

/// Nonnegative gcd of a slice of big integers (zero for an all-zero slice).
pub fn gcd_slice(xs: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in xs {
        g = g.gcd(x);
        if g == BigInt::from(1) {
            break;
        }
    }
    g.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let p = 101;
        let a = Fp::new(-3, p);
        assert_eq!(a.v, 98);
        assert_eq!((a * a.inv().unwrap()).v, 1);
        assert_eq!((a + Fp::new(3, p)).v, 0);
        assert_eq!((-a).v, 3);
    }

    #[test]
    fn rational_reduction_respects_denominators() {
        let r = Rat::new(BigInt::from(1), BigInt::from(3));
        let v = rat_mod(&r, 7).unwrap();
        assert_eq!(v * 3 % 7, 1);
        assert!(rat_mod(&r, 3).is_none());
    }

    #[test]
    fn prime_list() {
        assert_eq!(primes_from(100, 3), vec![101, 103, 107]);
        assert!(!is_prime(1));
        assert!(is_prime(65521));
    }

    #[test]
    fn roots_by_scan() {
        // x^2 - 1 over F_7
        assert_eq!(roots_mod(&[6, 0, 1], 7), vec![1, 6]);
        // x^2 + 1 over F_7 has none
        assert!(!has_root_mod(&[1, 0, 1], 7));
    }
}
