//! The generic families, their closed-form resolvents and parameter maps.

pub mod formulas;
mod rho;
mod witness;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{int, parse_rat_list, rat_list_string, QPoly, Rat};

pub use formulas::Scalar;
pub use rho::{Bivariate, BivariateRational, RhoCache, RhoSelfCheck, RHO_CACHE_VERSION};
pub use witness::{
    c3_branch_value, c3_isom_witness, check_witness, d4_branch_i, d4_branch_ii, d4_isom_witness, s3_from_u,
    s3_isom_witness, Witness, WitnessKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyId {
    C3,
    S3,
    D4,
    D5,
    Lehmer,
    Htc5,
}

impl FamilyId {
    pub fn arity(self) -> usize {
        match self {
            FamilyId::C3 | FamilyId::S3 | FamilyId::Lehmer => 1,
            FamilyId::D4 | FamilyId::D5 | FamilyId::Htc5 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::C3 => "c3",
            FamilyId::S3 => "s3",
            FamilyId::D4 => "d4",
            FamilyId::D5 => "d5",
            FamilyId::Lehmer => "lehmer",
            FamilyId::Htc5 => "htc5",
        }
    }

    /// Families whose specializations are compared through Brumer's quintic.
    pub fn is_quintic(self) -> bool {
        matches!(self, FamilyId::D5 | FamilyId::Lehmer | FamilyId::Htc5)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "c3" => FamilyId::C3,
            "s3" => FamilyId::S3,
            "d4" => FamilyId::D4,
            "d5" => FamilyId::D5,
            "lehmer" => FamilyId::Lehmer,
            "htc5" | "ht-c5" => FamilyId::Htc5,
            _ => return Err(Error::Parse(format!("unknown family {s:?}"))),
        })
    }
}

/// A rational parameter tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamPoint(#[serde(with = "crate::qpoly::rat_vec_string")] pub Vec<Rat>);

impl ParamPoint {
    pub fn new(v: Vec<Rat>) -> Self {
        ParamPoint(v)
    }

    pub fn ints(v: &[i64]) -> Self {
        ParamPoint(v.iter().map(|&x| int(x)).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(ParamPoint(parse_rat_list(s)?))
    }

    pub fn check_arity(&self, fam: FamilyId) -> Result<()> {
        if self.0.len() == fam.arity() {
            Ok(())
        } else {
            Err(Error::Arity { expected: fam.arity(), got: self.0.len() })
        }
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.0[i]
    }

    pub fn s(&self) -> &Rat {
        &self.0[0]
    }

    pub fn t(&self) -> &Rat {
        &self.0[1]
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rat_list_string(&self.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certification {
    Exact,
    Numeric,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certification::Exact => "exact",
            Certification::Numeric => "numeric",
        })
    }
}

/// The specialized polynomial, without the separability check.
pub fn family_poly_unchecked(fam: FamilyId, a: &ParamPoint) -> Result<QPoly> {
    a.check_arity(fam)?;
    let p = match fam {
        FamilyId::C3 => {
            let m = a.get(0);
            QPoly::from_coeffs(vec![-Rat::one(), -(m + int(3)), -m.clone(), Rat::one()])
        }
        FamilyId::S3 => {
            let t = a.get(0);
            QPoly::from_coeffs(vec![t.clone(), t.clone(), Rat::zero(), Rat::one()])
        }
        FamilyId::D4 => {
            let (s, t) = (a.get(0), a.get(1));
            QPoly::from_coeffs(vec![t.clone(), Rat::zero(), s.clone(), Rat::zero(), Rat::one()])
        }
        FamilyId::D5 => QPoly::from_coeffs(formulas::brumer_coeffs(a.s(), a.t())),
        FamilyId::Lehmer => lehmer_poly(a.get(0)),
        FamilyId::Htc5 => ht_c5_poly(a.get(0), a.get(1))?,
    };
    Ok(p)
}

pub fn family_poly(fam: FamilyId, a: &ParamPoint) -> Result<QPoly> {
    let p = family_poly_unchecked(fam, a)?;
    if p.discriminant().is_zero() {
        return Err(Error::NonSeparable(format!("{fam} at ({a}) has zero discriminant")));
    }
    Ok(p)
}

/// Lehmer's simplest quintic `h_n`.
pub fn lehmer_poly(n: &Rat) -> QPoly {
    let pw = |k: u32| num_traits::pow(n.clone(), k as usize);
    let c = |v: i64| int(v);
    QPoly::from_coeffs(vec![
        Rat::one(),
        pw(3) + c(4) * pw(2) + c(10) * n + c(10),
        pw(4) + c(5) * pw(3) + c(11) * pw(2) + c(15) * n + c(5),
        -(c(2) * pw(3) + c(6) * pw(2) + c(10) * n + c(10)),
        pw(2),
        Rat::one(),
    ])
}

/// The Brumer parameters whose splitting field is that of `h_n`.
pub fn lehmer_to_brumer(n: &Rat) -> ParamPoint {
    let pw = |k: usize| num_traits::pow(n.clone(), k);
    let s = int(-20) - int(5) * n + int(10) * pw(2) + int(12) * pw(3) + int(5) * pw(4) + pw(5);
    let t = int(-7) - int(10) * n - int(5) * pw(2) - pw(3);
    ParamPoint(vec![s, t])
}

pub fn ht_p(a: &Rat, b: &Rat) -> Rat {
    let a2 = a * a;
    let b2 = b * b;
    let u = &a2 - a - int(1);
    &u * &u + int(25) * (&a2 + int(1)) * &b2 + int(125) * &b2 * &b2
}

pub fn ht_q(a: &Rat, b: &Rat) -> Rat {
    (a + int(7)) * b * b - a + int(1)
}

/// Hashimoto-Tsunogai cyclic quintic `g_{A,B}`.
pub fn ht_c5_poly(a: &Rat, b: &Rat) -> Result<QPoly> {
    let p = ht_p(a, b);
    let q = ht_q(a, b);
    if q.is_zero() {
        return Err(Error::ExcludedParameter(format!("ht_Q({a},{b}) = 0")));
    }
    let c3 = -(&p / (&q * &q)) * (a * a - int(2) * a + int(15) * b * b + int(2));
    let k = &p * &p / (&q * &q * &q);
    Ok(QPoly::from_coeffs(vec![
        -(&k * int(2) * b),
        -(&k * (a - int(1))),
        &k * int(2) * b,
        c3,
        Rat::zero(),
        Rat::one(),
    ]))
}

pub fn d5_d_squared(a: &ParamPoint) -> Result<Rat> {
    a.check_arity(FamilyId::D5)?;
    Ok(formulas::d_squared(a.s(), a.t()))
}

fn s3_excluded(a: &Rat) -> bool {
    a.is_zero() || (int(4) * a + int(27)).is_zero()
}

/// `F_{a,b}` with leading coefficient `a − b`.
pub fn s3_resolvent(a: &Rat, b: &Rat) -> Result<QPoly> {
    if a == b {
        return Err(Error::EqualParams);
    }
    if s3_excluded(a) || s3_excluded(b) {
        return Err(Error::ExcludedParameter(format!(
            "a*b*(4a+27)*(4b+27) = 0 at (a,b) = ({a},{b})"
        )));
    }
    Ok(s3_resolvent_unchecked(a, b))
}

pub fn s3_resolvent_unchecked(a: &Rat, b: &Rat) -> QPoly {
    QPoly::from_coeffs(formulas::s3_coeffs(a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResolventKind {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl ResolventKind {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(ResolventKind::One),
            2 => Ok(ResolventKind::Two),
            _ => Err(Error::Parse(format!("resolvent kind must be 1 or 2, got {k}"))),
        }
    }
}

fn check_brumer(a: &ParamPoint) -> Result<()> {
    family_poly(FamilyId::D5, a).map(|_| ())
}

/// `F¹` from the closed-form coefficients. Symmetric in its arguments.
pub fn d5_f1(a: &ParamPoint, b: &ParamPoint) -> QPoly {
    QPoly::from_coeffs(formulas::f1_coeffs(a.s(), a.t(), b.s(), b.t()))
}

/// Degree-10 resolvent of the requested kind.
///
/// Kind 2 is `F¹` at `(ρ(a), b)`. With a cache, `ρ(a)` is exact; otherwise the
/// resolvent is built numerically from the roots and rationalized.
pub fn d5_resolvent(
    a: &ParamPoint,
    b: &ParamPoint,
    kind: ResolventKind,
    rho_cache: Option<&RhoCache>,
    digits: u32,
) -> Result<(QPoly, Certification)> {
    a.check_arity(FamilyId::D5)?;
    b.check_arity(FamilyId::D5)?;
    check_brumer(a)?;
    check_brumer(b)?;
    match (kind, rho_cache) {
        (ResolventKind::One, _) => Ok((d5_f1(a, b), Certification::Exact)),
        (ResolventKind::Two, Some(cache)) => {
            let ra = cache.apply(a)?;
            Ok((d5_f1(&ra, b), Certification::Exact))
        }
        (ResolventKind::Two, None) => {
            let f = crate::numres::numeric_resolvent_exact(
                FamilyId::D5,
                a,
                b,
                crate::numres::NumKind::D5RhoP,
                digits,
            )?;
            Ok((f, Certification::Numeric))
        }
    }
}

/// Input formats accepted by [`to_brumer`].
#[derive(Clone, Debug)]
pub enum BrumerInput {
    Lehmer(Rat),
    HtC5(Rat, Rat),
    Quintic(QPoly),
}

/// Brumer parameters with the same splitting field as the input.
pub fn to_brumer(input: &BrumerInput, digits: u32) -> Result<(ParamPoint, Certification)> {
    match input {
        BrumerInput::Lehmer(n) => Ok((lehmer_to_brumer(n), Certification::Exact)),
        BrumerInput::HtC5(a, b) => {
            let g = ht_c5_poly(a, b)?;
            to_brumer(&BrumerInput::Quintic(g), digits)
        }
        BrumerInput::Quintic(g) => {
            if g.deg() != 5 {
                return Err(Error::Unsupported(format!("expected a quintic, got degree {}", g.deg())));
            }
            if g.discriminant().is_zero() {
                return Err(Error::NonSeparable(format!("{g}")));
            }
            let pt = crate::numres::quintic_to_brumer(g, digits)?;
            Ok((pt, Certification::Numeric))
        }
    }
}

/// Brumer parameters for any quintic-family specialization; the identity for D5.
pub fn brumer_point(fam: FamilyId, a: &ParamPoint, digits: u32) -> Result<(ParamPoint, Certification)> {
    a.check_arity(fam)?;
    match fam {
        FamilyId::D5 => Ok((a.clone(), Certification::Exact)),
        FamilyId::Lehmer => to_brumer(&BrumerInput::Lehmer(a.get(0).clone()), digits),
        FamilyId::Htc5 => to_brumer(&BrumerInput::HtC5(a.get(0).clone(), a.get(1).clone()), digits),
        _ => Err(Error::Unsupported(format!("{fam} is not a quintic family"))),
    }
}

/// The two quintic factors of `F²` at `a = (0,3)`, `b = (10,3)`, as printed in
/// the literature; used as the cache self-check.
pub fn reference_f2() -> QPoly {
    use crate::qpoly::rat;
    let f = QPoly::from_coeffs(vec![rat(-3125, 27), rat(6250, 81), int(0), rat(-125, 9), int(0), int(1)]);
    let g = QPoly::from_coeffs(vec![rat(15625, 27), rat(15625, 81), rat(625, 9), rat(-125, 9), int(0), int(1)]);
    &f * &g
}

/// The expanded `F¹` at `a = (0,3)`, `b = (10,3)`.
pub fn reference_f1() -> QPoly {
    &(&QPoly::from_ints(&[5, 1]).pow(3) * &QPoly::from_ints(&[150, -15, 1]))
        * &QPoly::from_ints(&[-9375, 0, -625, 0, 0, 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat;
    use proptest::prelude::*;

    #[test]
    fn specializations() {
        assert_eq!(
            family_poly(FamilyId::D5, &ParamPoint::ints(&[0, 3])).unwrap(),
            QPoly::from_ints(&[3, 0, 5, 0, 0, 1])
        );
        assert_eq!(
            family_poly(FamilyId::S3, &ParamPoint::ints(&[2])).unwrap(),
            QPoly::from_ints(&[2, 2, 0, 1])
        );
        assert_eq!(
            family_poly(FamilyId::Lehmer, &ParamPoint::ints(&[0])).unwrap(),
            QPoly::from_ints(&[1, 10, 5, -10, 0, 1])
        );
        assert_eq!(
            family_poly(FamilyId::C3, &ParamPoint::ints(&[1])).unwrap(),
            QPoly::from_ints(&[-1, -4, -1, 1])
        );
    }

    #[test]
    fn separability_and_arity_errors() {
        assert!(matches!(
            family_poly(FamilyId::S3, &ParamPoint::ints(&[0])),
            Err(Error::NonSeparable(_))
        ));
        assert_eq!(
            family_poly(FamilyId::D5, &ParamPoint::ints(&[1])),
            Err(Error::Arity { expected: 2, got: 1 })
        );
    }

    #[test]
    fn lehmer_map_values() {
        assert_eq!(lehmer_to_brumer(&int(-2)), ParamPoint::ints(&[-18, 1]));
        assert_eq!(lehmer_to_brumer(&int(-1)), ParamPoint::ints(&[-13, -1]));
    }

    #[test]
    fn s3_discriminant_formula() {
        let f = family_poly(FamilyId::S3, &ParamPoint::ints(&[1])).unwrap();
        assert_eq!(f.discriminant(), int(-31));
        let r = s3_resolvent(&int(1), &int(2)).unwrap();
        let want = int(16) * num_traits::pow(int(31), 15) * num_traits::pow(int(35), 3);
        assert_eq!(r.discriminant(), want);
    }

    #[test]
    fn s3_resolvent_errors() {
        assert_eq!(s3_resolvent(&int(2), &int(2)), Err(Error::EqualParams));
        assert!(matches!(s3_resolvent(&int(1), &int(0)), Err(Error::ExcludedParameter(_))));
        assert!(matches!(
            s3_resolvent(&rat(-27, 4), &int(1)),
            Err(Error::ExcludedParameter(_))
        ));
    }

    #[test]
    fn kind_one_matches_reference() {
        let (f, c) = d5_resolvent(
            &ParamPoint::ints(&[0, 3]),
            &ParamPoint::ints(&[10, 3]),
            ResolventKind::One,
            None,
            128,
        )
        .unwrap();
        assert_eq!(f, reference_f1());
        assert_eq!(c, Certification::Exact);
        assert_eq!(f.eval(&int(-5)), int(0));
    }

    #[test]
    fn reference_polynomials_factor_as_printed() {
        let sq = reference_f1().squarefree_decomposition();
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0].0, &QPoly::from_ints(&[150, -15, 1]) * &QPoly::from_ints(&[-9375, 0, -625, 0, 0, 1]));
        assert_eq!(sq[1], (QPoly::from_ints(&[5, 1]), 3));
        assert_eq!(reference_f2().deg(), 10);
    }

    #[test]
    fn d_squared_at_reference_point() {
        assert_eq!(d5_d_squared(&ParamPoint::ints(&[0, 3])).unwrap(), int(-375));
        assert_eq!(d5_d_squared(&ParamPoint::ints(&[0, 0])).unwrap(), int(0));
    }

    #[test]
    fn disc_is_t_squared_times_d_squared_squared() {
        for (s, t) in [(0, 3), (10, 3), (0, 1), (-7, 2), (5, -4)] {
            let a = ParamPoint::ints(&[s, t]);
            let f = family_poly_unchecked(FamilyId::D5, &a).unwrap();
            let d2 = d5_d_squared(&a).unwrap();
            assert_eq!(f.discriminant(), int(t * t) * &d2 * &d2);
        }
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..6).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn f1_is_symmetric(s in small_rat(), t in small_rat(), s2 in small_rat(), t2 in small_rat()) {
            let a = ParamPoint(vec![s, t]);
            let b = ParamPoint(vec![s2, t2]);
            prop_assert_eq!(d5_f1(&a, &b), d5_f1(&b, &a));
        }

        #[test]
        fn s3_leading_coefficient(a in small_rat(), b in small_rat()) {
            prop_assume!(a != b && !s3_excluded(&a) && !s3_excluded(&b));
            let f = s3_resolvent(&a, &b).unwrap();
            prop_assert_eq!(f.deg(), 6);
            prop_assert_eq!(f.lc(), &a - &b);
        }
    }
}
