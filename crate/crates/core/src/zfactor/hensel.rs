//! Multifactor quadratic Hensel lifting along a factor tree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fp::{self, FpPoly};

type MPoly = Vec<BigInt>;

fn reduce(a: &[BigInt], m: &BigInt) -> MPoly {
    let mut out: MPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> MPoly {
    reduce(&crate::qpoly::zpoly::mul(a, b), m)
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> MPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: MPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> MPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: MPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (MPoly, MPoly) {
    let db = b.len() - 1;
    let mut r: MPoly = reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * bc).mod_floor(m);
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (reduce(&q, m), reduce(&r, m))
}

fn lift_fp(a: &FpPoly) -> MPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic step: from `f = g h`, `s g + t h = 1` mod `m` to mod `m^2`.
fn step(f: &[BigInt], g: &MPoly, h: &MPoly, s: &MPoly, t: &MPoly, m2: &BigInt) -> [MPoly; 4] {
    let e = sub(f, &mul(g, h, m2), m2);
    let (q, r) = divrem_monic(&mul(s, &e, m2), h, m2);
    let g2 = add(&add(g, &mul(t, &e, m2), m2), &mul(&q, g, m2), m2);
    let h2 = add(h, &r, m2);
    let b = sub(&add(&mul(s, &g2, m2), &mul(t, &h2, m2), m2), &[BigInt::one()], m2);
    let (c, d) = divrem_monic(&mul(s, &b, m2), &h2, m2);
    let s2 = sub(s, &d, m2);
    let t2 = sub(&sub(t, &mul(t, &b, m2), m2), &mul(&c, &g2, m2), m2);
    [g2, h2, s2, t2]
}

/// Lifts the monic factorization `f ≡ ∏ factors (mod p)` to modulus `p^(2^k)
/// >= bound`. `f` must be monic modulo the final modulus. Returns the lifted
/// > monic factors (in input order) and the modulus reached.
pub fn lift(f: &[BigInt], factors: &[FpPoly], p: u64, target: &BigInt) -> (Vec<MPoly>, BigInt) {
    let mut m = BigInt::from(p);
    while &m <= target {
        m = &m * &m;
    }
    let fm = reduce(f, &m);
    let mut out = Vec::with_capacity(factors.len());
    lift_tree(&fm, factors, p, &m, &mut out);
    (out, m)
}

fn lift_tree(f: &MPoly, factors: &[FpPoly], p: u64, modulus: &BigInt, out: &mut Vec<MPoly>) {
    if factors.len() == 1 {
        out.push(f.clone());
        return;
    }
    let mid = factors.len() / 2;
    let g0 = factors[..mid].iter().fold(vec![1u64], |acc, x| fp::mul(&acc, x, p));
    let h0 = factors[mid..].iter().fold(vec![1u64], |acc, x| fp::mul(&acc, x, p));
    let (_, s0, t0) = fp::xgcd(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0));
    let mut m = BigInt::from(p);
    while &m < modulus {
        m = &m * &m;
        let fr = reduce(f, &m);
        [g, h, s, t] = step(&fr, &g, &h, &s, &t, &m);
    }
    lift_tree(&g, &factors[..mid], p, modulus, out);
    lift_tree(&h, &factors[mid..], p, modulus, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::zpoly;

    #[test]
    fn lifts_to_true_factors() {
        // (x - 3)(x + 5)(x^2 + 2) over Z, lifted from mod 7
        let f = zpoly::mul(
            &zpoly::mul(&[BigInt::from(-3), BigInt::one()], &[BigInt::from(5), BigInt::one()]),
            &[BigInt::from(2), BigInt::zero(), BigInt::one()],
        );
        let p = 7;
        let fm: FpPoly = f.iter().map(|c| crate::modp::bigint_mod(c, p)).collect();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        let facs = fp::factor_squarefree(&fm, p, &mut rng);
        let (lifted, m) = lift(&f, &facs, p, &BigInt::from(10_000));
        let prod = lifted.iter().fold(vec![BigInt::one()], |acc, x| mul(&acc, x, &m));
        assert_eq!(prod, reduce(&f, &m));
        let sym: Vec<MPoly> = lifted
            .iter()
            .map(|g| g.iter().map(|c| crate::modp::symmetric_mod(c, &m)).collect())
            .collect();
        assert!(sym.contains(&vec![BigInt::from(-3), BigInt::one()]));
        assert!(sym.contains(&vec![BigInt::from(2), BigInt::zero(), BigInt::one()]));
    }
}
