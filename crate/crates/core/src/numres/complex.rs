use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::bigfloat::BigFloat;
use crate::qpoly::Rat;

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u64) -> Self {
        Complex::new(BigFloat::zero(prec), BigFloat::zero(prec))
    }

    pub fn from_i64(n: i64, prec: u64) -> Self {
        Complex::new(BigFloat::from_i64(n, prec), BigFloat::zero(prec))
    }

    pub fn from_rat(r: &Rat, prec: u64) -> Self {
        Complex::new(BigFloat::from_rat(r, prec), BigFloat::zero(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u64) -> Self {
        Complex::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec))
    }

    pub fn with_prec(&self, prec: u64) -> Self {
        Complex::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn prec(&self) -> u64 {
        self.re.prec().max(self.im.prec())
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    /// Approximate `log2 |z|`.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * ((a - m).exp2().powi(2) + (b - m).exp2().powi(2)).log2()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        Complex::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        let d = o.norm_sqr();
        let re = &(&self.re * &o.re) + &(&self.im * &o.im);
        let im = &(&self.im * &o.re) - &(&self.re * &o.im);
        Complex::new(&re / &d, &im / &d)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64();
        write!(f, "({a:e}{b:+e}i)")
    }
}

/// Horner evaluation of an ascending coefficient vector.
pub fn horner(coeffs: &[Complex], z: &Complex) -> Complex {
    let mut acc = Complex::zero(z.prec());
    for c in coeffs.iter().rev() {
        acc = &(&acc * z) + c;
    }
    acc
}

/// Ascending coefficients of `∏ (X − r)`.
pub fn poly_from_roots(roots: &[Complex], prec: u64) -> Vec<Complex> {
    let mut c = vec![Complex::from_i64(1, prec)];
    for r in roots {
        let mut next = vec![Complex::zero(prec); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = &next[i + 1] + ci;
            next[i] = &next[i] - &(ci * r);
        }
        c = next;
    }
    c
}
