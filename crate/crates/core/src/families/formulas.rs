//! Closed-form resolvent coefficients, evaluated over any [`Scalar`].
//!
//! The same code runs over exact rationals and over F_p, so the search
//! prefilter reduces the very formulas the exact path uses.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::modp::Fp;
use crate::qpoly::Rat;

pub trait Scalar:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// The integer `v` in the same ring as `self`.
    fn int(&self, v: i64) -> Self;
    fn half(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Scalar for Rat {
    fn int(&self, v: i64) -> Self {
        Rat::from_integer(v.into())
    }
    fn half(&self) -> Self {
        self / Rat::from_integer(2.into())
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for Fp {
    fn int(&self, v: i64) -> Self {
        Fp::new(v, self.p)
    }
    fn half(&self) -> Self {
        *self * Fp::new(2, self.p).inv().expect("odd prime")
    }
    fn inv(&self) -> Option<Self> {
        Fp::inv(*self)
    }
}

fn pow<S: Scalar>(x: &S, e: u8) -> S {
    let mut acc = x.int(1);
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// Coefficient and exponents of `s, t, s', t'`.
type Term = (i64, [u8; 4]);

fn eval_terms<S: Scalar>(terms: &[Term], v: [&S; 4]) -> S {
    let mut acc = v[0].int(0);
    for (c, e) in terms {
        let mut m = v[0].int(*c);
        for k in 0..4 {
            if e[k] > 0 {
                m = m * pow(v[k], e[k]);
            }
        }
        acc = acc + m;
    }
    acc
}

// [body] + tail, where [a] = a + a with primed and unprimed swapped.
fn bracket<S: Scalar>(body: &[Term], tail: &[Term], s: &S, t: &S, s2: &S, t2: &S) -> S {
    eval_terms(body, [s, t, s2, t2]) + eval_terms(body, [s2, t2, s, t]) + eval_terms(tail, [s, t, s2, t2])
}

const C3_BODY: &[Term] = &[(-21, [0, 1, 0, 0]), (-2, [0, 1, 1, 0]), (3, [0, 2, 0, 0]), (-1, [0, 2, 0, 1]), (1, [0, 2, 1, 0]), (2, [1, 0, 0, 0])];
const C3_TAIL: &[Term] = &[(31, [0, 0, 0, 0]), (5, [0, 1, 0, 1]), (-3, [1, 0, 1, 0])];
const C2_BODY: &[Term] = &[(112, [0, 1, 0, 0]), (5, [0, 1, 1, 0]), (-32, [0, 2, 0, 0]), (14, [0, 2, 0, 1]), (-12, [0, 2, 1, 0]), (8, [0, 2, 1, 1]), (2, [0, 3, 0, 0]), (2, [0, 3, 0, 1]), (-2, [0, 3, 0, 2]), (4, [0, 3, 1, 0]), (-20, [1, 0, 0, 0]), (8, [1, 1, 0, 0]), (-15, [1, 1, 0, 1]), (-13, [1, 1, 1, 0])];
const C2_TAIL: &[Term] = &[(-102, [0, 0, 0, 0]), (-119, [0, 1, 0, 1]), (6, [0, 2, 0, 2]), (27, [1, 0, 1, 0]), (-1, [1, 1, 1, 1])];
const C1_BODY: &[Term] = &[(-128, [0, 1, 0, 0]), (-7, [0, 1, 1, 0]), (-20, [0, 1, 2, 0]), (60, [0, 2, 0, 0]), (-77, [0, 2, 0, 1]), (9, [0, 2, 1, 0]), (-29, [0, 2, 1, 1]), (6, [0, 2, 2, 0]), (-8, [0, 3, 0, 0]), (8, [0, 3, 0, 1]), (10, [0, 3, 0, 2]), (-12, [0, 3, 1, 0]), (18, [0, 3, 1, 1]), (2, [0, 3, 2, 0]), (2, [0, 4, 1, 0]), (32, [1, 0, 0, 0]), (-26, [1, 1, 0, 0]), (2, [1, 1, 0, 1]), (38, [1, 1, 1, 0]), (-8, [1, 1, 2, 0]), (4, [1, 2, 0, 0]), (3, [1, 2, 0, 1]), (-2, [1, 2, 0, 2]), (-5, [1, 2, 1, 0]), (1, [1, 2, 1, 1]), (2, [2, 0, 0, 0]), (-6, [2, 0, 1, 0])];
const C1_TAIL: &[Term] = &[(80, [0, 0, 0, 0]), (145, [0, 1, 0, 1]), (24, [0, 2, 0, 2]), (-8, [0, 3, 0, 3]), (-37, [1, 0, 1, 0]), (-45, [1, 1, 1, 1])];
const C0_BODY: &[Term] = &[(56, [0, 1, 0, 0]), (-2, [0, 1, 1, 0]), (-21, [0, 1, 2, 0]), (-38, [0, 2, 0, 0]), (105, [0, 2, 0, 1]), (5, [0, 2, 1, 0]), (36, [0, 2, 1, 1]), (-2, [0, 2, 2, 0]), (8, [0, 2, 2, 1]), (8, [0, 3, 0, 0]), (4, [0, 3, 0, 1]), (22, [0, 3, 0, 2]), (8, [0, 3, 1, 0]), (-6, [0, 3, 1, 1]), (8, [0, 3, 1, 2]), (4, [0, 3, 2, 0]), (-6, [0, 4, 0, 1]), (8, [0, 4, 0, 2]), (-2, [0, 4, 0, 3]), (-4, [0, 4, 1, 0]), (6, [0, 4, 1, 1]), (-2, [0, 5, 0, 1]), (-16, [1, 0, 0, 0]), (24, [1, 1, 0, 0]), (-104, [1, 1, 0, 1]), (-38, [1, 1, 1, 0]), (-11, [1, 1, 2, 0]), (-8, [1, 2, 0, 0]), (35, [1, 2, 0, 1]), (-37, [1, 2, 0, 2]), (13, [1, 2, 1, 0]), (-14, [1, 2, 1, 1]), (2, [1, 2, 2, 0]), (16, [1, 3, 0, 1]), (-2, [1, 3, 0, 2]), (2, [1, 3, 1, 0]), (-2, [2, 0, 0, 0]), (5, [2, 0, 1, 0]), (2, [2, 1, 0, 0]), (-33, [2, 1, 0, 1]), (-7, [2, 1, 1, 0]), (-1, [2, 1, 1, 1])];
const C0_TAIL: &[Term] = &[(-24, [0, 0, 0, 0]), (-224, [0, 1, 0, 1]), (-101, [0, 2, 0, 2]), (-8, [0, 3, 0, 3]), (14, [1, 0, 1, 0]), (1, [1, 1, 1, 1]), (-1, [1, 2, 1, 2]), (-8, [2, 0, 2, 0])];
const D_SQUARED: &[(i64, [u8; 2])] = &[(4, [0, 1]), (-91, [0, 2]), (40, [0, 3]), (4, [0, 4]), (-4, [0, 5]), (-14, [1, 1]), (-34, [1, 2]), (24, [1, 3]), (1, [2, 0]), (-30, [2, 1]), (1, [2, 2]), (-4, [3, 0])];

pub fn d_squared<S: Scalar>(s: &S, t: &S) -> S {
    let mut acc = s.int(0);
    for (c, [a, b]) in D_SQUARED {
        acc = acc + s.int(*c) * pow(s, *a) * pow(t, *b);
    }
    acc
}

fn poly_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let zero = a[0].int(0);
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Ascending coefficients of the degree-10 resolvent `F¹` for the pair
/// `(s, t)`, `(s2, t2)`.
pub fn f1_coeffs<S: Scalar>(s: &S, t: &S, s2: &S, t2: &S) -> Vec<S> {
    let c3 = bracket(C3_BODY, C3_TAIL, s, t, s2, t2);
    let c2 = bracket(C2_BODY, C2_TAIL, s, t, s2, t2);
    let c1 = bracket(C1_BODY, C1_TAIL, s, t, s2, t2);
    let c0 = bracket(C0_BODY, C0_TAIL, s, t, s2, t2);
    let three = s.int(3);
    let c4 = -((t.clone() - three.clone()) * (t2.clone() - three));
    let a = [c0.half(), c1.half(), c2.half(), c3, c4, s.int(1)];
    let b = [
        s.clone() - t.clone() + s2.clone() - t2.clone() + t.clone() * t2.clone() + s.int(2),
        t.clone() + t2.clone() - s.int(1),
        s.int(1),
    ];
    let dd = d_squared(s, t) * d_squared(s2, t2);
    let quarter = dd.half().half();
    let a2 = poly_mul(&a, &a);
    let b2 = poly_mul(&b, &b);
    let mut out = a2;
    for (i, c) in b2.into_iter().enumerate() {
        out[i] = out[i].clone() - quarter.clone() * c;
    }
    out
}

/// Ascending coefficients of `s(X²+9X−3s)³ − t(X³−2sX²−9sX−2s²−27s)²`.
pub fn s3_coeffs<S: Scalar>(s: &S, t: &S) -> Vec<S> {
    let n = [-(s.int(3) * s.clone()), s.int(9), s.int(1)];
    let d = [
        -(s.int(2) * s.clone() * s.clone()) - s.int(27) * s.clone(),
        -(s.int(9) * s.clone()),
        -(s.int(2) * s.clone()),
        s.int(1),
    ];
    let n3 = poly_mul(&poly_mul(&n, &n), &n);
    let d2 = poly_mul(&d, &d);
    n3.into_iter()
        .zip(d2)
        .map(|(x, y)| s.clone() * x - t.clone() * y)
        .collect()
}

/// Ascending coefficients of the Brumer quintic.
pub fn brumer_coeffs<S: Scalar>(s: &S, t: &S) -> Vec<S> {
    let one = s.int(1);
    vec![
        t.clone(),
        s.clone(),
        t.clone() * t.clone() - t.clone() - s.int(2) * s.clone() - one.clone(),
        s.clone() - t.clone() + s.int(3),
        t.clone() - s.int(3),
        one,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{int, QPoly};

    fn q(v: Vec<Rat>) -> QPoly {
        QPoly::from_coeffs(v)
    }

    #[test]
    fn d_squared_values() {
        assert_eq!(d_squared(&int(0), &int(3)), int(-375));
        assert_eq!(d_squared(&int(0), &int(0)), int(0));
    }

    #[test]
    fn f1_reproduces_worked_example() {
        let f = q(f1_coeffs(&int(0), &int(3), &int(10), &int(3)));
        let want = &(&QPoly::from_ints(&[5, 1]).pow(3) * &QPoly::from_ints(&[150, -15, 1]))
            * &QPoly::from_ints(&[-9375, 0, -625, 0, 0, 1]);
        assert_eq!(f, want);
    }

    #[test]
    fn reduction_commutes_with_evaluation() {
        let p = 101;
        let (s, t, s2, t2) = (int(7), int(-3), int(12), int(5));
        let exact = f1_coeffs(&s, &t, &s2, &t2);
        let fp = |r: &Rat| Fp::from_rat(r, p).unwrap();
        let modp = f1_coeffs(&fp(&s), &fp(&t), &fp(&s2), &fp(&t2));
        for (e, m) in exact.iter().zip(modp) {
            assert_eq!(fp(e), m);
        }
    }

    #[test]
    fn s3_formula_kills_second_term_at_zero() {
        let f = q(s3_coeffs(&int(1), &int(0)));
        assert_eq!(f, QPoly::from_ints(&[-3, 9, 1]).pow(3));
    }
}
