//! Binary floating point on top of `BigInt`: value `m · 2^e`, mantissa rounded
//! to `prec` bits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::qpoly::Rat;

/// Bits needed for `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u64 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 32
}

#[derive(Clone)]
pub struct BigFloat {
    m: BigInt,
    e: i64,
    prec: u64,
}

impl BigFloat {
    pub fn zero(prec: u64) -> Self {
        BigFloat { m: BigInt::zero(), e: 0, prec }
    }

    pub fn from_int(n: BigInt, prec: u64) -> Self {
        BigFloat { m: n, e: 0, prec }.normalized()
    }

    pub fn from_i64(n: i64, prec: u64) -> Self {
        Self::from_int(BigInt::from(n), prec)
    }

    pub fn from_rat(r: &Rat, prec: u64) -> Self {
        Self::from_int(r.numer().clone(), prec) / Self::from_int(r.denom().clone(), prec)
    }

    pub fn from_f64(x: f64, prec: u64) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        BigFloat { m: BigInt::from(m) * sign, e, prec }.normalized()
    }

    /// `10^(-k)`.
    pub fn pow10_neg(k: u32, prec: u64) -> Self {
        Self::from_rat(&Rat::new(BigInt::one(), num_traits::pow(BigInt::from(10), k as usize)), prec)
    }

    pub fn prec(&self) -> u64 {
        self.prec
    }

    pub fn with_prec(&self, prec: u64) -> Self {
        BigFloat { m: self.m.clone(), e: self.e, prec }.normalized()
    }

    fn normalized(mut self) -> Self {
        let bits = self.m.bits();
        if bits > self.prec {
            let shift = bits - self.prec;
            // Round half away from zero.
            let neg = self.m.is_negative();
            let mut a = self.m.abs();
            a += BigInt::one() << (shift - 1);
            a >>= shift;
            self.m = if neg { -a } else { a };
            self.e += shift as i64;
        }
        if self.m.is_zero() {
            self.e = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat { m: self.m.abs(), e: self.e, prec: self.prec }
    }

    /// Approximate `log2 |x|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.m.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.m.bits();
        let top = if bits > 60 { (&self.m >> (bits - 60)).abs() } else { self.m.abs() };
        let shift = bits.saturating_sub(60) as f64;
        top.to_f64().unwrap().log2() + shift + self.e as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.m.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits();
        let (top, shift) = if bits > 60 { (&self.m >> (bits - 60), (bits - 60) as i64) } else { (self.m.clone(), 0) };
        let e = shift + self.e;
        let v = top.to_f64().unwrap();
        if e > 2000 {
            return v.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        v * (e as f64).exp2()
    }

    /// Exact value as a rational.
    pub fn to_rat(&self) -> Rat {
        if self.e >= 0 {
            Rat::from_integer(&self.m << self.e as usize)
        } else {
            Rat::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        // Scale so that the integer square root carries prec bits.
        let mut shift = 2 * self.prec as i64 + 4 - self.m.bits() as i64;
        if (self.e - shift).is_odd() {
            shift += 1;
        }
        let scaled = if shift >= 0 { &self.m << shift as usize } else { &self.m >> (-shift) as usize };
        let r = scaled.sqrt();
        BigFloat { m: r, e: (self.e - shift) / 2, prec: self.prec }.normalized()
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        BigFloat { m: self.m.clone(), e: self.e + k, prec: self.prec }
    }
}

fn add_impl(a: &BigFloat, b: &BigFloat, negate_b: bool) -> BigFloat {
    let prec = a.prec.max(b.prec);
    let bm = if negate_b { -b.m.clone() } else { b.m.clone() };
    if a.m.is_zero() {
        return BigFloat { m: bm, e: b.e, prec }.normalized();
    }
    if bm.is_zero() {
        return BigFloat { m: a.m.clone(), e: a.e, prec }.normalized();
    }
    // Drop an operand that is far below the other's precision.
    let top_a = a.m.bits() as i64 + a.e;
    let top_b = bm.bits() as i64 + b.e;
    let gap = prec as i64 + 4;
    if top_a - top_b > gap {
        return BigFloat { m: a.m.clone(), e: a.e, prec }.normalized();
    }
    if top_b - top_a > gap {
        return BigFloat { m: bm, e: b.e, prec }.normalized();
    }
    let e = a.e.min(b.e);
    let ma = &a.m << (a.e - e) as usize;
    let mb = bm << (b.e - e) as usize;
    BigFloat { m: ma + mb, e, prec }.normalized()
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, o: &BigFloat) -> BigFloat {
        add_impl(self, o, false)
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, o: &BigFloat) -> BigFloat {
        add_impl(self, o, true)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, o: &BigFloat) -> BigFloat {
        BigFloat { m: &self.m * &o.m, e: self.e + o.e, prec: self.prec.max(o.prec) }.normalized()
    }
}

impl Div for &BigFloat {
    type Output = BigFloat;
    fn div(self, o: &BigFloat) -> BigFloat {
        assert!(!o.m.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(o.prec);
        let shift = (prec + o.m.bits() + 2).saturating_sub(self.m.bits()) as i64;
        let num = if shift > 0 { &self.m << shift as usize } else { self.m.clone() };
        BigFloat { m: num / &o.m, e: self.e - o.e - shift.max(0), prec }.normalized()
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { m: -self.m.clone(), e: self.e, prec: self.prec }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, o: BigFloat) -> BigFloat { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_value(o) == Ordering::Equal
    }
}

impl BigFloat {
    pub fn cmp_value(&self, o: &Self) -> Ordering {
        let d = self - o;
        match d.m.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp_value(o))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}
