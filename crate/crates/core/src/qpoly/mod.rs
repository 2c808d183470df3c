//! Exact rationals and dense univariate polynomials over Q.
//!
//! Everything downstream (resolvents, factorization, classifiers) works on
//! [`QPoly`]. Coefficients are stored in ascending degree order and the
//! vector is kept trimmed, so the zero polynomial is the empty vector and has
//! no degree.

mod gcd;
mod roots;
mod sqfree;
mod text;
pub(crate) mod zpoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rat;
pub use text::{parse_rat, parse_rat_list, rat_list_string, rat_string, rat_vec_string};

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact integer square root of a nonnegative big integer, if it is a square.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// A rational is a square iff `num * den` is a perfect integer square.
pub fn is_square(r: &Rat) -> bool {
    isqrt_exact(&(r.numer() * r.denom())).is_some()
}

pub fn sqrt_rat(r: &Rat) -> Option<Rat> {
    let n = isqrt_exact(r.numer())?;
    let d = isqrt_exact(r.denom())?;
    Some(Rat::new(n, d))
}

/// Whether two nonzero rationals differ by a square factor.
pub fn same_square_class(a: &Rat, b: &Rat) -> bool {
    !a.is_zero() && !b.is_zero() && is_square(&(a * b))
}

/// Ordering key used to pick the "smallest" witness: `|num| + den`, then
/// nonnegative before negative.
pub fn height_key(r: &Rat) -> (BigInt, bool) {
    (r.numer().abs() + r.denom(), r.is_negative())
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    /// The indeterminate X.
    pub fn x() -> Self {
        QPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// `c * X^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        QPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        QPoly::from_coeffs(coeffs.iter().cloned().map(Rat::from_integer).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(QPoly::one(), |acc, r| {
            &acc * &QPoly::from_coeffs(vec![-r.clone(), Rat::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; use where that is harmless.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic associate; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = quot * q + rem` with `deg rem < deg q`.
    pub fn divrem(&self, q: &QPoly) -> Result<(QPoly, QPoly)> {
        let dq = q.degree().ok_or(Error::DivisionByZeroPoly)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((QPoly::zero(), self.clone()));
        }
        let lc_inv = q.lc().recip();
        let mut quot = vec![Rat::zero(); rem.len() - dq];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dq] * &lc_inv;
            if !c.is_zero() {
                for (j, qc) in q.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * qc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dq);
        Ok((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)))
    }

    /// Exact quotient when `q` divides `self`.
    pub fn exact_div(&self, q: &QPoly) -> Option<QPoly> {
        match self.divrem(q) {
            Ok((quot, rem)) if rem.is_zero() => Some(quot),
            _ => None,
        }
    }

    /// `self = unit * P` with `P` primitive in Z[X] and positive leading
    /// coefficient. The zero polynomial gives `(0, [])`.
    pub fn primitive_integer(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = crate::modp::gcd_slice(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rat::new(g, l), prim)
    }

    pub fn gcd(&self, other: &QPoly) -> QPoly {
        gcd::gcd(self, other)
    }

    pub fn resultant(&self, other: &QPoly) -> Rat {
        gcd::resultant(self, other)
    }

    /// `(-1)^(n(n-1)/2) Res(p, p') / lc(p)`. Degree 1 gives 1, constants 0.
    pub fn discriminant(&self) -> Rat {
        let n = match self.degree() {
            None | Some(0) => return Rat::zero(),
            Some(1) => return Rat::one(),
            Some(n) => n,
        };
        let r = self.resultant(&self.derivative()) / self.lc();
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, u32)> {
        sqfree::yun(self)
    }

    pub fn rational_roots(&self) -> Vec<(Rat, u32)> {
        roots::rational_roots(self)
    }

    /// Canonical comma-separated ascending coefficient form.
    pub fn to_canonical(&self) -> String {
        text::canonical(self)
    }

    pub fn parse_canonical(s: &str) -> Result<QPoly> {
        text::parse_canonical(s)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::pretty(self))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({})", text::pretty(self))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, o: QPoly) -> QPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, o: &QPoly) -> QPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}
