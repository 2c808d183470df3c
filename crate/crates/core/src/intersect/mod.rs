//! Galois groups of specializations and the intersection classifiers.

mod tables;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{
    brumer_point, c3_isom_witness, d4_isom_witness, d5_d_squared, d5_f1, family_poly, s3_isom_witness,
    s3_resolvent, Certification, FamilyId, ParamPoint, RhoCache, Witness,
};
use crate::numres::{numeric_resolvent_exact, twisted_d5_resolvent, NumKind, DEFAULT_DIGITS};
use crate::qpoly::{is_square, same_square_class, QPoly, Rat};
use crate::zfactor::{decomposition_type, factor_over_q, DecompType};

pub use tables::{rows_for, TableRow, D5_TABLE, S3_TABLE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupLabel {
    S3,
    C3,
    D5,
    C5,
    D4,
    C4,
    V4,
    C2,
    C1,
    Other,
}

impl GroupLabel {
    pub fn order(self) -> usize {
        match self {
            GroupLabel::S3 => 6,
            GroupLabel::C3 => 3,
            GroupLabel::D5 => 10,
            GroupLabel::C5 => 5,
            GroupLabel::D4 => 8,
            GroupLabel::C4 | GroupLabel::V4 => 4,
            GroupLabel::C2 => 2,
            GroupLabel::C1 => 1,
            GroupLabel::Other => 0,
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Equal,
    AContainsB,
    BContainsA,
    QuadraticMeet,
    TrivialMeet,
    #[serde(rename = "NotComparable-TrivialMeet")]
    NotComparableTrivialMeet,
    Degenerate,
}

impl Relation {
    pub fn mirrored(self) -> Self {
        match self {
            Relation::AContainsB => Relation::BContainsA,
            Relation::BContainsA => Relation::AContainsB,
            r => r,
        }
    }

    /// The relation between the splitting fields in words.
    pub fn phrase(self) -> &'static str {
        match self {
            Relation::Equal => "L_a = L_b",
            Relation::AContainsB => "L_a ⊃ L_b",
            Relation::BContainsA => "L_a ⊂ L_b",
            Relation::QuadraticMeet => "[L_a ∩ L_b : M] = 2",
            Relation::TrivialMeet => "L_a ∩ L_b = M",
            Relation::NotComparableTrivialMeet => "L_a ⊅ L_b, L_a ∩ L_b = M",
            Relation::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::NotComparableTrivialMeet => "NotComparable-TrivialMeet",
            Relation::Equal => "Equal",
            Relation::AContainsB => "AContainsB",
            Relation::BContainsA => "BContainsA",
            Relation::QuadraticMeet => "QuadraticMeet",
            Relation::TrivialMeet => "TrivialMeet",
            Relation::Degenerate => "Degenerate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub family: FamilyId,
    pub a: ParamPoint,
    pub b: ParamPoint,
    pub group_a: GroupLabel,
    pub group_b: GroupLabel,
    pub relation: Relation,
    pub dt1: Option<DecompType>,
    pub dt2: Option<DecompType>,
    pub certification: Certification,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions<'a> {
    pub rho_cache: Option<&'a RhoCache>,
    pub digits: u32,
}

impl Default for ClassifyOptions<'_> {
    fn default() -> Self {
        ClassifyOptions { rho_cache: None, digits: DEFAULT_DIGITS }
    }
}

fn degrees(p: &QPoly) -> Result<Vec<usize>> {
    Ok(factor_over_q(p)?.degrees())
}

fn quadratic_rank(p: &QPoly) -> Result<usize> {
    let fac = factor_over_q(p)?;
    let mut classes: Vec<Rat> = Vec::new();
    for f in fac.factors.iter().filter(|f| f.poly.deg() == 2) {
        let d = f.poly.discriminant();
        if !is_square(&d) && !classes.iter().any(|c| same_square_class(c, &d)) {
            classes.push(d);
        }
    }
    Ok(match classes.len() {
        0 => 0,
        1 => 1,
        // Two independent classes; a third would be their product.
        _ => 2,
    })
}

/// Galois group of a specialization.
pub fn galois_group(fam: FamilyId, a: &ParamPoint) -> Result<GroupLabel> {
    let f = family_poly(fam, a)?;
    let pat = degrees(&f)?;
    let unexpected = || Err(Error::UnexpectedPattern(pat.clone()));
    match fam {
        FamilyId::C3 => match pat.as_slice() {
            [3] => Ok(GroupLabel::C3),
            [1, 1, 1] => Ok(GroupLabel::C1),
            _ => unexpected(),
        },
        FamilyId::S3 => match pat.as_slice() {
            [3] if is_square(&f.discriminant()) => Ok(GroupLabel::C3),
            [3] => Ok(GroupLabel::S3),
            [2, 1] => Ok(GroupLabel::C2),
            [1, 1, 1] => Ok(GroupLabel::C1),
            _ => unexpected(),
        },
        FamilyId::D4 => {
            let (s, t) = (a.get(0), a.get(1));
            match pat.as_slice() {
                [4] if is_square(t) => Ok(GroupLabel::V4),
                [4] if is_square(&(t * (s * s - Rat::from_integer(4.into()) * t))) => Ok(GroupLabel::C4),
                [4] => Ok(GroupLabel::D4),
                [3, 1] => unexpected(),
                _ => Ok(match quadratic_rank(&f)? {
                    0 => GroupLabel::C1,
                    1 => GroupLabel::C2,
                    _ => GroupLabel::V4,
                }),
            }
        }
        FamilyId::D5 => match pat.as_slice() {
            [5] if is_square(&d5_d_squared(a)?) => Ok(GroupLabel::C5),
            [5] => Ok(GroupLabel::D5),
            [2, 2, 1] => Ok(GroupLabel::C2),
            [1, 1, 1, 1, 1] => Ok(GroupLabel::C1),
            _ => unexpected(),
        },
        FamilyId::Lehmer | FamilyId::Htc5 => match pat.as_slice() {
            [5] => Ok(GroupLabel::C5),
            [1, 1, 1, 1, 1] => Ok(GroupLabel::C1),
            _ => unexpected(),
        },
    }
}

/// Decomposition types of the family's resolvents at `(a, b)` without any
/// group normalization; `dt2` only for the quintic family.
pub fn resolvent_dt(
    fam: FamilyId,
    a: &ParamPoint,
    b: &ParamPoint,
    opts: &ClassifyOptions,
) -> Result<(DecompType, Option<DecompType>)> {
    match fam {
        FamilyId::S3 => {
            let f = s3_resolvent(a.get(0), b.get(0))?;
            Ok((decomposition_type(&f, None)?, None))
        }
        FamilyId::D5 => {
            let ga = galois_group(fam, a)?;
            let gb = galois_group(fam, b)?;
            let rows = rows_for(D5_TABLE, ga, gb);
            let (dt1, dt2, _) = d5_dts(a, b, &rows, opts)?;
            Ok((dt1, Some(dt2)))
        }
        _ => Err(Error::Unsupported(format!("no resolvent table for {fam}"))),
    }
}

fn dt_with_fallback(
    p: &QPoly,
    ctx: &[Vec<usize>],
    twisted: impl Fn() -> Result<QPoly>,
    cert: &mut Certification,
) -> Result<DecompType> {
    match decomposition_type(p, Some(ctx)) {
        Err(Error::AmbiguousDT(_)) => {
            *cert = Certification::Numeric;
            decomposition_type(&twisted()?, Some(ctx))
        }
        r => r,
    }
}

fn no_row(fam: FamilyId, a: &ParamPoint, b: &ParamPoint, ga: GroupLabel, gb: GroupLabel, extra: &str) -> Error {
    Error::NoTableRow(format!("{fam} a=({a}) b=({b}) G_a={ga} G_b={gb} {extra}"))
}

fn d5_dts(
    a: &ParamPoint,
    b: &ParamPoint,
    rows: &[&TableRow],
    opts: &ClassifyOptions,
) -> Result<(DecompType, DecompType, Certification)> {
    let mut cert = Certification::Exact;
    let ctx1 = tables::dt1_context(rows);
    let f1 = d5_f1(a, b);
    let twist_digits = opts.digits.saturating_mul(2);
    let dt1 = dt_with_fallback(&f1, &ctx1, || twisted_d5_resolvent(a, b, false, 2, twist_digits), &mut cert)?;
    let f2 = match opts.rho_cache {
        Some(cache) => d5_f1(&cache.apply(a)?, b),
        None => {
            cert = Certification::Numeric;
            numeric_resolvent_exact(FamilyId::D5, a, b, NumKind::D5RhoP, opts.digits)?
        }
    };
    let ctx2 = tables::dt2_context(rows, &dt1.partition);
    let dt2 = dt_with_fallback(&f2, &ctx2, || twisted_d5_resolvent(a, b, true, 2, twist_digits), &mut cert)?;
    Ok((dt1, dt2, cert))
}

fn report(
    family: FamilyId,
    a: &ParamPoint,
    b: &ParamPoint,
    groups: (GroupLabel, GroupLabel),
    relation: Relation,
    certification: Certification,
) -> IntersectionReport {
    IntersectionReport {
        family,
        a: a.clone(),
        b: b.clone(),
        group_a: groups.0,
        group_b: groups.1,
        relation,
        dt1: None,
        dt2: None,
        certification,
        witness: None,
        notes: Vec::new(),
    }
}

/// Relation when one side splits completely; the tables do not cover it.
fn trivial_side(ga: GroupLabel, gb: GroupLabel) -> Option<Relation> {
    match (ga, gb) {
        (GroupLabel::C1, GroupLabel::C1) => Some(Relation::Equal),
        (_, GroupLabel::C1) => Some(Relation::AContainsB),
        (GroupLabel::C1, _) => Some(Relation::BContainsA),
        _ => None,
    }
}

pub fn classify_intersection(fam: FamilyId, a: &ParamPoint, b: &ParamPoint) -> Result<IntersectionReport> {
    classify_intersection_with(fam, a, b, &ClassifyOptions::default())
}

pub fn classify_intersection_with(
    fam: FamilyId,
    a: &ParamPoint,
    b: &ParamPoint,
    opts: &ClassifyOptions,
) -> Result<IntersectionReport> {
    a.check_arity(fam)?;
    b.check_arity(fam)?;
    match fam {
        FamilyId::S3 => classify_s3(a, b),
        FamilyId::D5 | FamilyId::Lehmer | FamilyId::Htc5 => classify_quintic(fam, a, b, opts),
        FamilyId::C3 => classify_c3(a, b),
        FamilyId::D4 => classify_d4(a, b),
    }
}

fn classify_s3(a: &ParamPoint, b: &ParamPoint) -> Result<IntersectionReport> {
    let fam = FamilyId::S3;
    let ga = galois_group(fam, a)?;
    let gb = galois_group(fam, b)?;
    let mut rep = report(fam, a, b, (ga, gb), Relation::Equal, Certification::Exact);
    if a == b {
        rep.notes.push("identical parameters".into());
        return Ok(rep);
    }
    if let Some(r) = trivial_side(ga, gb) {
        rep.relation = r;
        rep.notes.push("outside table: a specialization splits completely".into());
        return Ok(rep);
    }
    let swap = ga.order() < gb.order();
    let (x, y, gx, gy) = if swap { (b, a, gb, ga) } else { (a, b, ga, gb) };
    let rows = rows_for(S3_TABLE, gx, gy);
    let f = s3_resolvent(x.get(0), y.get(0))?;
    let dt = decomposition_type(&f, Some(&tables::dt1_context(&rows)))
        .map_err(|e| no_row(fam, a, b, ga, gb, &format!("({e})")))?;
    let row = rows
        .iter()
        .find(|r| r.dt1 == dt.partition.as_slice())
        .ok_or_else(|| no_row(fam, a, b, ga, gb, &format!("dt {dt}")))?;
    rep.relation = if swap { row.relation.mirrored() } else { row.relation };
    if rep.relation == Relation::Equal {
        rep.witness = s3_isom_witness(a.get(0), b.get(0))?;
    }
    rep.dt1 = Some(dt);
    Ok(rep)
}

fn classify_quintic(
    fam: FamilyId,
    a0: &ParamPoint,
    b0: &ParamPoint,
    opts: &ClassifyOptions,
) -> Result<IntersectionReport> {
    let (a, ca) = brumer_point(fam, a0, opts.digits)?;
    let (b, cb) = brumer_point(fam, b0, opts.digits)?;
    let ga = galois_group(FamilyId::D5, &a)?;
    let gb = galois_group(FamilyId::D5, &b)?;
    let base_cert = if ca == Certification::Numeric || cb == Certification::Numeric {
        Certification::Numeric
    } else {
        Certification::Exact
    };
    let mut rep = report(fam, a0, b0, (ga, gb), Relation::Equal, base_cert);
    if fam != FamilyId::D5 {
        rep.notes.push(format!("brumer parameters ({a}) and ({b})"));
    }
    if let Some(r) = trivial_side(ga, gb) {
        rep.relation = r;
        rep.notes.push("outside table: a specialization splits completely".into());
        return Ok(rep);
    }
    let swap = ga.order() < gb.order();
    let (x, y, gx, gy) = if swap { (&b, &a, gb, ga) } else { (&a, &b, ga, gb) };
    let rows = rows_for(D5_TABLE, gx, gy);
    let (dt1, dt2, cert) = d5_dts(x, y, &rows, opts).map_err(|e| match e {
        Error::NoConsistentDT | Error::AmbiguousDT(_) => no_row(fam, a0, b0, ga, gb, &format!("({e})")),
        e => e,
    })?;
    let row = rows
        .iter()
        .find(|r| r.dt1 == dt1.partition.as_slice() && r.dt2 == Some(dt2.partition.as_slice()))
        .ok_or_else(|| no_row(fam, a0, b0, ga, gb, &format!("dt1 {dt1} dt2 {dt2}")))?;
    rep.relation = if swap { row.relation.mirrored() } else { row.relation };
    if cert == Certification::Numeric {
        rep.certification = Certification::Numeric;
    }
    rep.dt1 = Some(dt1);
    rep.dt2 = Some(dt2);
    Ok(rep)
}

fn classify_c3(a: &ParamPoint, b: &ParamPoint) -> Result<IntersectionReport> {
    let fam = FamilyId::C3;
    let ga = galois_group(fam, a)?;
    let gb = galois_group(fam, b)?;
    let mut rep = report(fam, a, b, (ga, gb), Relation::Equal, Certification::Exact);
    rep.notes.push("no decomposition table for this family; cyclic cubic fields either coincide or meet in M".into());
    if let Some(r) = trivial_side(ga, gb) {
        rep.relation = r;
        return Ok(rep);
    }
    rep.witness = c3_isom_witness(a.get(0), b.get(0))?;
    rep.relation = if rep.witness.is_some() { Relation::Equal } else { Relation::TrivialMeet };
    Ok(rep)
}

fn classify_d4(a: &ParamPoint, b: &ParamPoint) -> Result<IntersectionReport> {
    let fam = FamilyId::D4;
    let ga = galois_group(fam, a)?;
    let gb = galois_group(fam, b)?;
    let mut rep = report(fam, a, b, (ga, gb), Relation::Degenerate, Certification::Exact);
    rep.notes.push("no decomposition table for this family; Equal means the splitting fields coincide".into());
    if ga == GroupLabel::D4 {
        rep.witness = d4_isom_witness(a.get(0), a.get(1), b.get(0), b.get(1))?;
        if rep.witness.is_some() {
            rep.relation = Relation::Equal;
        }
    }
    Ok(rep)
}

/// Answer to the isomorphism problem with its evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub family: FamilyId,
    pub a: ParamPoint,
    pub b: ParamPoint,
    pub isomorphic: bool,
    pub witness: Option<Witness>,
    pub report: Option<IntersectionReport>,
}

pub fn isomorphic(fam: FamilyId, a: &ParamPoint, b: &ParamPoint, opts: &ClassifyOptions) -> Result<Isomorphism> {
    a.check_arity(fam)?;
    b.check_arity(fam)?;
    let mut out = Isomorphism { family: fam, a: a.clone(), b: b.clone(), isomorphic: false, witness: None, report: None };
    match fam {
        FamilyId::C3 => {
            family_poly(fam, a)?;
            family_poly(fam, b)?;
            out.witness = c3_isom_witness(a.get(0), b.get(0))?;
            out.isomorphic = out.witness.is_some();
        }
        FamilyId::S3 => {
            family_poly(fam, a)?;
            family_poly(fam, b)?;
            if a == b {
                out.isomorphic = true;
            } else {
                out.witness = s3_isom_witness(a.get(0), b.get(0))?;
                out.isomorphic = out.witness.is_some();
            }
        }
        FamilyId::D4 => {
            out.witness = d4_isom_witness(a.get(0), a.get(1), b.get(0), b.get(1))?;
            out.isomorphic = out.witness.is_some();
        }
        FamilyId::D5 | FamilyId::Lehmer | FamilyId::Htc5 => {
            let r = classify_intersection_with(fam, a, b, opts)?;
            out.isomorphic = r.relation == Relation::Equal;
            out.report = Some(r);
        }
    }
    Ok(out)
}
