//! Explicit witnesses for equal splitting fields. For D4 the two branches
//! cover both conjugacy classes of quartic subfields, so a branch (ii) witness
//! does not make the quartic fields themselves isomorphic.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{family_poly, s3_excluded, FamilyId, ParamPoint};
use crate::error::{Error, Result};
use crate::intersect::{galois_group, GroupLabel};
use crate::qpoly::{height_key, int, is_square, sqrt_rat, QPoly, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    #[serde(rename = "C3-z-branch1")]
    C3Branch1,
    #[serde(rename = "C3-z-branch2")]
    C3Branch2,
    #[serde(rename = "S3-u")]
    S3U,
    #[serde(rename = "D4-pq-i")]
    D4I,
    #[serde(rename = "D4-pq-ii")]
    D4Ii,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::C3Branch1 => "C3-z-branch1",
            WitnessKind::C3Branch2 => "C3-z-branch2",
            WitnessKind::S3U => "S3-u",
            WitnessKind::D4I => "D4-pq-i",
            WitnessKind::D4Ii => "D4-pq-ii",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    #[serde(with = "crate::qpoly::rat_vec_string")]
    pub values: Vec<Rat>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.kind, crate::qpoly::rat_list_string(&self.values))
    }
}

impl Witness {
    fn key(&self) -> Vec<(num_bigint::BigInt, bool)> {
        self.values.iter().map(height_key).collect()
    }
}

fn smallest(mut v: Vec<Witness>) -> Option<Witness> {
    v.sort_by_key(|w| w.key());
    v.into_iter().next()
}

fn q(c: Vec<Rat>) -> QPoly {
    QPoly::from_coeffs(c)
}

/// `m z(z+1) + z³ + 3z² − 1`, the shared denominator of both C3 branches.
fn c3_denominator(m: &Rat, z: &Rat) -> Rat {
    m * z * (z + int(1)) + z * z * z + int(3) * z * z - int(1)
}

/// Image of `z` under the branch map.
pub fn c3_branch_value(m: &Rat, z: &Rat, branch: u8) -> Option<Rat> {
    let d = c3_denominator(m, z);
    if d.is_zero() {
        return None;
    }
    let z3 = z * z * z;
    let num = if branch == 1 {
        m * (&z3 - int(3) * z - int(1)) - int(9) * z * (z + int(1))
    } else {
        -(m * (&z3 + int(3) * z * z - int(1)) + int(3) * (&z3 - int(3) * z - int(1)))
    };
    Some(num / d)
}

pub fn c3_isom_witness(m: &Rat, n: &Rat) -> Result<Option<Witness>> {
    family_poly(FamilyId::C3, &ParamPoint(vec![m.clone()]))?;
    family_poly(FamilyId::C3, &ParamPoint(vec![n.clone()]))?;
    let branch1 = q(vec![
        m - n,
        n * m + int(3) * m + int(9),
        n * m + int(3) * n + int(9),
        n - m,
    ]);
    let branch2 = q(vec![
        -(n + m + int(3)),
        n * m - int(9),
        n * (m + int(3)) + int(3) * m,
        n + m + int(3),
    ]);
    let mut found = Vec::new();
    for (cubic, kind, b) in [(branch1, WitnessKind::C3Branch1, 1u8), (branch2, WitnessKind::C3Branch2, 2)] {
        if cubic.is_zero() {
            // Every z works; unreachable over Q since it forces m² + 3m + 9 = 0.
            let z = (0i64..).map(int).find(|z| !c3_denominator(m, z).is_zero()).unwrap();
            found.push(Witness { kind, values: vec![z] });
            continue;
        }
        for (z, _) in cubic.rational_roots() {
            if c3_branch_value(m, &z, b).as_ref() == Some(n) {
                found.push(Witness { kind, values: vec![z] });
            }
        }
    }
    Ok(smallest(found))
}

/// `b` from `(a, u)`; `None` at a pole.
pub fn s3_from_u(a: &Rat, u: &Rat) -> Option<Rat> {
    let n = u * u + int(9) * u - int(3) * a;
    let d = u * u * u - int(2) * a * u * u - int(9) * a * u - int(2) * a * a - int(27) * a;
    if d.is_zero() {
        return None;
    }
    Some(a * &n * &n * &n / (&d * &d))
}

pub fn s3_isom_witness(a: &Rat, b: &Rat) -> Result<Option<Witness>> {
    if a == b {
        return Err(Error::EqualParams);
    }
    if s3_excluded(a) || s3_excluded(b) {
        return Err(Error::ExcludedParameter(format!(
            "a*b*(4a+27)*(4b+27) = 0 at (a,b) = ({a},{b})"
        )));
    }
    // b·D(u)² − a·N(u)³, cleared independently of the resolvent code.
    let n = q(vec![-(int(3) * a), int(9), int(1)]);
    let d = q(vec![
        -(int(2) * a * a) - int(27) * a,
        -(int(9) * a),
        -(int(2) * a),
        int(1),
    ]);
    let eq = &(&d * &d).scale(b) - &n.pow(3).scale(a);
    let found = eq
        .rational_roots()
        .into_iter()
        .filter(|(u, _)| s3_from_u(a, u).as_ref() == Some(b))
        .map(|(u, _)| Witness { kind: WitnessKind::S3U, values: vec![u] })
        .collect();
    Ok(smallest(found))
}

/// Branch (i) images of `(p, q)`.
pub fn d4_branch_i(a: &Rat, b: &Rat, p: &Rat, qq: &Rat) -> (Rat, Rat) {
    let q1 = a * p * p - int(4) * b * p * qq + a * b * qq * qq;
    let q2 = p * p - a * p * qq + b * qq * qq;
    (q1, b * &q2 * &q2)
}

/// Branch (ii) images of `(p, q)`.
pub fn d4_branch_ii(a: &Rat, b: &Rat, p: &Rat, qq: &Rat) -> (Rat, Rat) {
    let q1 = a * p * p - int(4) * b * p * qq + a * b * qq * qq;
    let q3 = p * p - b * qq * qq;
    (int(2) * q1, (a * a - int(4) * b) * &q3 * &q3)
}

// Solve Q1(p,q) = target, Q2(p,q) = r where Q1 = a p² − 4b pq + ab q² and
// Q2 = p² + c1 pq + c0 q².
fn solve_forms(a: &Rat, b: &Rat, c1: &Rat, c0: &Rat, target: &Rat, r: &Rat) -> Vec<(Rat, Rat)> {
    let mut out = Vec::new();
    // q = 0: a p² = target and p² = r.
    if (a * r) == *target {
        if let Some(p) = sqrt_rat(r) {
            out.push((p.clone(), Rat::zero()));
            out.push((-p, Rat::zero()));
        }
    }
    // q ≠ 0, λ = p/q: target·Q2(λ,1) = r·Q1(λ,1).
    let quad = q(vec![
        target * c0 - r * a * b,
        target * c1 + int(4) * r * b,
        target - r * a,
    ]);
    if quad.is_zero() {
        return out;
    }
    for (lambda, _) in quad.rational_roots() {
        let q2 = &lambda * &lambda + c1 * &lambda + c0;
        if q2.is_zero() {
            continue;
        }
        if let Some(qv) = sqrt_rat(&(r / &q2)) {
            if qv.is_zero() {
                continue;
            }
            for qs in [qv.clone(), -qv] {
                out.push((&lambda * &qs, qs));
            }
        }
    }
    out
}

pub fn d4_isom_witness(a: &Rat, b: &Rat, a2: &Rat, b2: &Rat) -> Result<Option<Witness>> {
    let src = ParamPoint(vec![a.clone(), b.clone()]);
    if galois_group(FamilyId::D4, &src)? != GroupLabel::D4 {
        return Err(Error::NotD4);
    }
    family_poly(FamilyId::D4, &ParamPoint(vec![a2.clone(), b2.clone()]))?;

    let mut found = Vec::new();
    // Branch (i): b' = b·Q2², so r = ±sqrt(b'/b).
    if let Some(r) = sqrt_rat(&(b2 / b)) {
        for r in [r.clone(), -r] {
            for (p, qq) in solve_forms(a, b, &-a.clone(), b, a2, &r) {
                if d4_branch_i(a, b, &p, &qq) == (a2.clone(), b2.clone()) {
                    found.push(Witness { kind: WitnessKind::D4I, values: vec![p, qq] });
                }
            }
        }
    }
    if let Some(w) = smallest(found) {
        return Ok(Some(w));
    }
    let mut found = Vec::new();
    let disc = a * a - int(4) * b;
    if !disc.is_zero() && is_square(&(b2 / &disc)) {
        let r = sqrt_rat(&(b2 / &disc)).unwrap();
        let half = a2 / int(2);
        for r in [r.clone(), -r] {
            for (p, qq) in solve_forms(a, b, &Rat::zero(), &-b.clone(), &half, &r) {
                if d4_branch_ii(a, b, &p, &qq) == (a2.clone(), b2.clone()) {
                    found.push(Witness { kind: WitnessKind::D4Ii, values: vec![p, qq] });
                }
            }
        }
    }
    Ok(smallest(found))
}

/// Whether a witness reproduces the target parameters.
pub fn check_witness(w: &Witness, src: &[Rat], dst: &[Rat]) -> bool {
    match w.kind {
        WitnessKind::C3Branch1 => c3_branch_value(&src[0], &w.values[0], 1).as_ref() == Some(&dst[0]),
        WitnessKind::C3Branch2 => c3_branch_value(&src[0], &w.values[0], 2).as_ref() == Some(&dst[0]),
        WitnessKind::S3U => s3_from_u(&src[0], &w.values[0]).as_ref() == Some(&dst[0]),
        WitnessKind::D4I => {
            d4_branch_i(&src[0], &src[1], &w.values[0], &w.values[1]) == (dst[0].clone(), dst[1].clone())
        }
        WitnessKind::D4Ii => {
            d4_branch_ii(&src[0], &src[1], &w.values[0], &w.values[1]) == (dst[0].clone(), dst[1].clone())
        }
    }
}
