//! Parallel grid search for parameter pairs with equal splitting fields.
//!
//! Three stages per pair: a mod-p root test on resolvent coefficients computed
//! from parameter residues, exact rational-root confirmation, then the full
//! classifier. Only pairs classified `Equal` are reported.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use gal_core::families::formulas::{f1_coeffs, s3_coeffs};
use gal_core::families::{brumer_point, d5_f1, family_poly, s3_resolvent_unchecked};
use gal_core::intersect::classify_intersection_with;
use gal_core::modp::{has_root_mod, i64_mod, is_prime, rat_mod, Fp};
use gal_core::numres::{rho_image, DEFAULT_DIGITS};
use gal_core::qpoly::int;
use gal_core::{ClassifyOptions, FamilyId, IntersectionReport, ParamPoint, Rat, Relation, ResolventKind, RhoCache};

use crate::CliError;

pub const DEFAULT_PRIMES: [u64; 3] = [101, 103, 107];

/// One coordinate of the grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axis {
    Fixed(Rat),
    /// Inclusive integer range.
    Range { lo: i64, hi: i64 },
}

impl Axis {
    fn len(&self) -> usize {
        match self {
            Axis::Fixed(_) => 1,
            Axis::Range { lo, hi } => (hi - lo + 1).max(0) as usize,
        }
    }

    fn value(&self, k: usize) -> Rat {
        match self {
            Axis::Fixed(r) => r.clone(),
            Axis::Range { lo, .. } => int(lo + k as i64),
        }
    }
}

/// How kind-2 resolvents obtain `ρ` of the left point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certify {
    /// The cache when one is supplied, numeric otherwise.
    #[default]
    Auto,
    Exact,
    Numeric,
    /// Exact, cross-checked against the numeric image.
    Both,
}

impl FromStr for Certify {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "auto" => Ok(Certify::Auto),
            "exact" => Ok(Certify::Exact),
            "numeric" => Ok(Certify::Numeric),
            "both" => Ok(Certify::Both),
            _ => Err(CliError::InvalidSpec(format!("unknown certification mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub family: FamilyId,
    /// Fixed left side; `None` selects pairwise mode over the grid.
    pub target: Option<ParamPoint>,
    pub axes: Vec<Axis>,
    pub primes: Vec<u64>,
    pub certify: Certify,
    /// Resolvent kinds tried for quintic families.
    pub kinds: Vec<ResolventKind>,
    /// Worker count; 0 lets rayon decide.
    pub threads: usize,
    pub digits: u32,
    pub rho_cache: Option<RhoCache>,
}

impl SearchSpec {
    pub fn new(family: FamilyId, axes: Vec<Axis>) -> Self {
        SearchSpec {
            family,
            target: None,
            axes,
            primes: DEFAULT_PRIMES.to_vec(),
            certify: Certify::Auto,
            kinds: vec![ResolventKind::One, ResolventKind::Two],
            threads: 0,
            digits: DEFAULT_DIGITS,
            rho_cache: None,
        }
    }

    pub fn with_target(mut self, target: ParamPoint) -> Self {
        self.target = Some(target);
        self
    }

    pub fn with_kinds(mut self, kinds: &[ResolventKind]) -> Self {
        self.kinds = kinds.to_vec();
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::InvalidSpec(m));
        if self.axes.len() != self.family.arity() {
            return bad(format!("{} takes {} coordinates, grid has {}", self.family, self.family.arity(), self.axes.len()));
        }
        if self.axes.iter().any(|a| a.len() == 0) {
            return bad("grid is empty".into());
        }
        if let Some(t) = &self.target {
            t.check_arity(self.family)?;
        }
        for (i, &p) in self.primes.iter().enumerate() {
            if !(3..1 << 16).contains(&p) || !is_prime(p) {
                return bad(format!("filter modulus {p} is not an odd prime below 65536"));
            }
            if self.primes[..i].contains(&p) {
                return bad(format!("filter prime {p} repeated"));
            }
        }
        if self.family.is_quintic() && self.kinds.is_empty() {
            return bad("no resolvent kind selected".into());
        }
        let needs_cache = matches!(self.certify, Certify::Exact | Certify::Both);
        if needs_cache && self.family.is_quintic() && self.kinds.contains(&ResolventKind::Two) && self.rho_cache.is_none()
        {
            return bad("exact kind-2 search needs a rho cache".into());
        }
        Ok(())
    }

    pub fn grid_size(&self) -> usize {
        self.axes.iter().map(Axis::len).product()
    }

    /// The `idx`-th grid point in lexicographic order.
    pub fn point(&self, idx: usize) -> ParamPoint {
        let mut rem = idx;
        let mut coords = vec![Rat::from_integer(0.into()); self.axes.len()];
        for (k, ax) in self.axes.iter().enumerate().rev() {
            let n = ax.len();
            coords[k] = ax.value(rem % n);
            rem /= n;
        }
        ParamPoint(coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub a: ParamPoint,
    pub b: ParamPoint,
    /// Resolvent kinds with a rational root (quintic families only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kinds: Vec<u8>,
    pub report: IntersectionReport,
}

/// A pair or point the scan had to skip.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairError {
    pub a: ParamPoint,
    pub b: Option<ParamPoint>,
    pub message: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub pairs: u64,
    pub stage1: u64,
    pub stage2: u64,
    pub hits: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, o: Self) {
        self.pairs += o.pairs;
        self.stage1 += o.stage1;
        self.stage2 += o.stage2;
        self.hits += o.hits;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub hits: Vec<SearchHit>,
    pub errors: Vec<PairError>,
    pub stats: SearchStats,
}

/// Reduced left-hand parameters for one kind and prime.
#[derive(Clone, Copy, Debug)]
enum LeftRes {
    Quintic(Fp, Fp),
    Cubic(Fp),
}

impl LeftRes {
    fn pair_has_root(self, r: (u64, u64), p: u64) -> bool {
        let coeffs = match self {
            LeftRes::Quintic(s, t) => f1_coeffs(&s, &t, &Fp { v: r.0, p }, &Fp { v: r.1, p }),
            LeftRes::Cubic(a) => {
                let b = Fp { v: r.0, p };
                // A vanishing leading coefficient says nothing about roots.
                if a == b {
                    return true;
                }
                s3_coeffs(&a, &b)
            }
        };
        has_root_mod(&coeffs.iter().map(|c| c.v).collect::<Vec<_>>(), p)
    }
}

const UNKNOWN: u8 = 0;
const PASS: u8 = 1;
const REJECT: u8 = 2;

/// Lazily filled verdicts indexed by the right point's residues.
#[derive(Clone, Debug)]
struct FilterTable {
    p: u64,
    two_dim: bool,
    left: Option<LeftRes>,
    cells: Vec<u8>,
}

impl FilterTable {
    fn new(p: u64, left: Option<LeftRes>, two_dim: bool) -> Self {
        let size = if left.is_some() { if two_dim { p * p } else { p } } else { 0 };
        FilterTable { p, two_dim, left, cells: vec![UNKNOWN; size as usize] }
    }

    fn index(&self, r: (u64, u64)) -> usize {
        if self.two_dim {
            (r.0 * self.p + r.1) as usize
        } else {
            r.0 as usize
        }
    }

    fn fill(&mut self) {
        let Some(left) = self.left else { return };
        let p = self.p;
        for i in 0..self.cells.len() as u64 {
            let r = if self.two_dim { (i / p, i % p) } else { (i, 0) };
            self.cells[i as usize] = if left.pair_has_root(r, p) { PASS } else { REJECT };
        }
    }

    fn peek(&self, r: Option<(u64, u64)>) -> Option<bool> {
        let Some(r) = r else { return Some(true) };
        if self.left.is_none() {
            return Some(true);
        }
        match self.cells[self.index(r)] {
            PASS => Some(true),
            REJECT => Some(false),
            _ => None,
        }
    }

    fn passes(&mut self, r: Option<(u64, u64)>) -> bool {
        if let Some(v) = self.peek(r) {
            return v;
        }
        let (left, r) = (self.left.expect("peeked"), r.expect("peeked"));
        let v = left.pair_has_root(r, self.p);
        let i = self.index(r);
        self.cells[i] = if v { PASS } else { REJECT };
        v
    }
}

/// Left side of the pairs: the exact parameters fed to `F¹` for each kind.
struct Left {
    raw: ParamPoint,
    kinds: Vec<(u8, ParamPoint)>,
    tables: Vec<Vec<FilterTable>>,
}

/// Per-point data used by the right side of each pair.
struct Prepared {
    /// Brumer parameters for Lehmer and HT-C5 points.
    mapped: Option<Vec<Option<ParamPoint>>>,
    /// Residues of each point per prime, for filtered families.
    residues: Vec<Vec<Option<(u64, u64)>>>,
}

fn filtered(fam: FamilyId) -> bool {
    matches!(fam, FamilyId::S3 | FamilyId::D5 | FamilyId::Lehmer | FamilyId::Htc5)
}

fn residue(pt: &ParamPoint, p: u64) -> Option<(u64, u64)> {
    let a = rat_mod(pt.get(0), p)?;
    let b = if pt.0.len() > 1 { rat_mod(pt.get(1), p)? } else { 0 };
    Some((a, b))
}

struct Ctx<'a> {
    spec: &'a SearchSpec,
    prep: Prepared,
    opts: ClassifyOptions<'a>,
}

impl Ctx<'_> {
    fn right_exact(&self, idx: usize) -> Option<ParamPoint> {
        match &self.prep.mapped {
            Some(m) => m[idx].clone(),
            None => Some(self.spec.point(idx)),
        }
    }

    /// Exact parameters of a left point per kind, plus errors to report.
    fn left(&self, raw: ParamPoint, mapped: Option<ParamPoint>, errors: &mut Vec<PairError>) -> Option<Left> {
        let spec = self.spec;
        let fam = spec.family;
        let err = |m: String| PairError { a: raw.clone(), b: None, message: m };
        if let Err(e) = family_poly(fam, &raw) {
            errors.push(err(e.to_string()));
            return None;
        }
        let mut kinds = Vec::new();
        if fam.is_quintic() {
            let base = match mapped {
                Some(m) => m,
                None => match brumer_point(fam, &raw, spec.digits) {
                    Ok((m, _)) => m,
                    Err(e) => {
                        errors.push(err(e.to_string()));
                        return None;
                    }
                },
            };
            if spec.kinds.contains(&ResolventKind::One) {
                kinds.push((1, base.clone()));
            }
            if spec.kinds.contains(&ResolventKind::Two) {
                match self.rho(&base) {
                    Ok(r) => kinds.push((2, r)),
                    Err(m) => errors.push(err(format!("kind 2 skipped: {m}"))),
                }
            }
        } else {
            kinds.push((1, raw.clone()));
        }
        let two_dim = fam.is_quintic();
        let tables = kinds
            .iter()
            .map(|(_, k)| {
                spec.primes
                    .iter()
                    .map(|&p| {
                        let left = if !filtered(fam) {
                            None
                        } else if two_dim {
                            Fp::from_rat(k.s(), p).zip(Fp::from_rat(k.t(), p)).map(|(s, t)| LeftRes::Quintic(s, t))
                        } else {
                            Fp::from_rat(k.get(0), p).map(LeftRes::Cubic)
                        };
                        FilterTable::new(p, left, two_dim)
                    })
                    .collect()
            })
            .collect();
        Some(Left { raw, kinds, tables })
    }

    fn rho(&self, base: &ParamPoint) -> Result<ParamPoint, String> {
        let numeric = || rho_image(base, self.spec.digits).map_err(|e| e.to_string());
        let cached = |c: &RhoCache| c.apply(base).map_err(|e| e.to_string());
        match (self.spec.certify, &self.spec.rho_cache) {
            (Certify::Numeric, _) | (Certify::Auto, None) => numeric(),
            (Certify::Both, Some(c)) => {
                let exact = cached(c)?;
                if numeric()? != exact {
                    return Err(format!("numeric rho disagrees with the cache at ({base})"));
                }
                Ok(exact)
            }
            (_, Some(c)) => cached(c),
            (_, None) => Err("no rho cache".into()),
        }
    }

    fn stage2(&self, left: &ParamPoint, right: &ParamPoint) -> bool {
        match self.spec.family {
            FamilyId::S3 => left == right || !s3_resolvent_unchecked(left.get(0), right.get(0)).rational_roots().is_empty(),
            FamilyId::C3 | FamilyId::D4 => true,
            _ => !d5_f1(left, right).rational_roots().is_empty(),
        }
    }

    fn scan(&self, left: &mut Left, rights: impl Iterator<Item = usize>, shared: bool) -> SearchOutcome {
        let mut out = SearchOutcome::default();
        let fam = self.spec.family;
        for j in rights {
            out.stats.pairs += 1;
            let res = &self.prep.residues;
            let mut kinds_ok = Vec::new();
            for (k, (kind, _)) in left.kinds.iter().enumerate() {
                let pass = left.tables[k].iter_mut().enumerate().all(|(pi, t)| {
                    let r = if res.is_empty() { None } else { res[j][pi] };
                    if shared {
                        t.peek(r).unwrap_or(true)
                    } else {
                        t.passes(r)
                    }
                });
                if pass {
                    kinds_ok.push((k, *kind));
                }
            }
            if kinds_ok.is_empty() {
                continue;
            }
            out.stats.stage1 += 1;
            let Some(right) = self.right_exact(j) else { continue };
            let confirmed: Vec<u8> =
                kinds_ok.iter().filter(|(k, _)| self.stage2(&left.kinds[*k].1, &right)).map(|(_, kd)| *kd).collect();
            if confirmed.is_empty() {
                continue;
            }
            out.stats.stage2 += 1;
            let b = self.spec.point(j);
            match classify_intersection_with(fam, &left.raw, &b, &self.opts) {
                Ok(report) if report.relation == Relation::Equal => {
                    out.stats.hits += 1;
                    let kinds = if fam.is_quintic() { confirmed } else { Vec::new() };
                    out.hits.push(SearchHit { a: left.raw.clone(), b, kinds, report });
                }
                Ok(report) => out.errors.push(PairError {
                    a: left.raw.clone(),
                    b: Some(b),
                    message: format!("resolvent has a rational root but relation is {}", report.relation),
                }),
                Err(e) => out.errors.push(PairError { a: left.raw.clone(), b: Some(b), message: e.to_string() }),
            }
        }
        out
    }
}

fn merge(parts: Vec<SearchOutcome>) -> SearchOutcome {
    let mut out = SearchOutcome::default();
    for p in parts {
        out.hits.extend(p.hits);
        out.errors.extend(p.errors);
        out.stats += p.stats;
    }
    out.hits.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    out.errors.sort();
    out.errors.dedup();
    out
}

fn prepare(spec: &SearchSpec) -> (Prepared, Vec<PairError>) {
    let n = spec.grid_size();
    let fam = spec.family;
    let mut errors = Vec::new();
    let mapped = match fam {
        FamilyId::Lehmer | FamilyId::Htc5 => {
            let m: Vec<Option<ParamPoint>> = (0..n)
                .into_par_iter()
                .map(|i| brumer_point(fam, &spec.point(i), spec.digits).map(|(p, _)| p))
                .collect::<Vec<_>>()
                .into_iter()
                .enumerate()
                .map(|(i, r)| {
                    r.map_err(|e| errors.push(PairError { a: spec.point(i), b: None, message: e.to_string() })).ok()
                })
                .collect();
            Some(m)
        }
        _ => None,
    };
    let residues = if !filtered(fam) || spec.primes.is_empty() {
        Vec::new()
    } else {
        (0..n)
            .into_par_iter()
            .map(|i| {
                spec.primes
                    .iter()
                    .map(|&p| match &mapped {
                        Some(m) => m[i].as_ref().and_then(|pt| residue(pt, p)),
                        None => fast_residue(spec, i, p),
                    })
                    .collect()
            })
            .collect()
    };
    (Prepared { mapped, residues }, errors)
}

/// Residues straight from the grid coordinates, without big-integer work for
/// integer axes.
fn fast_residue(spec: &SearchSpec, idx: usize, p: u64) -> Option<(u64, u64)> {
    let mut rem = idx;
    let mut out = [0u64; 2];
    for (k, ax) in spec.axes.iter().enumerate().rev() {
        let n = ax.len();
        let i = rem % n;
        rem /= n;
        out[k] = match ax {
            Axis::Fixed(r) => rat_mod(r, p)?,
            Axis::Range { lo, .. } => i64_mod(lo + i as i64, p),
        };
    }
    Some((out[0], out[1]))
}

/// Runs the three-stage scan. Per-pair failures land in `errors`; only an
/// invalid spec or target aborts.
pub fn search_grid(spec: &SearchSpec) -> Result<SearchOutcome, CliError> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.threads)
        .build()
        .map_err(|e| CliError::InvalidSpec(e.to_string()))?;
    pool.install(|| run(spec))
}

fn run(spec: &SearchSpec) -> Result<SearchOutcome, CliError> {
    let (prep, mut errors) = prepare(spec);
    let ctx = Ctx {
        spec,
        prep,
        opts: ClassifyOptions { rho_cache: spec.rho_cache.as_ref(), digits: spec.digits },
    };
    let n = spec.grid_size();
    let mut parts = match &spec.target {
        Some(target) => {
            let mut left = ctx.left(target.clone(), None, &mut errors).ok_or_else(|| {
                CliError::InvalidSpec(format!("target rejected: {}", errors.last().map_or("", |e| e.message.as_str())))
            })?;
            for row in &mut left.tables {
                row.par_iter_mut().for_each(FilterTable::fill);
            }
            let chunk = spec.axes.last().map_or(1, Axis::len).max(1);
            let starts: Vec<usize> = (0..n).step_by(chunk).collect();
            starts
                .into_par_iter()
                .map(|lo| {
                    // Fully populated tables are only read.
                    let mut l = Left { raw: left.raw.clone(), kinds: left.kinds.clone(), tables: left.tables.clone() };
                    ctx.scan(&mut l, lo..(lo + chunk).min(n), true)
                })
                .collect::<Vec<_>>()
        }
        None => (0..n)
            .into_par_iter()
            .map(|i| {
                let mut errs = Vec::new();
                let mapped = ctx.prep.mapped.as_ref().map(|m| m[i].clone());
                if mapped.as_ref().is_some_and(Option::is_none) {
                    return SearchOutcome::default();
                }
                let Some(mut left) = ctx.left(spec.point(i), mapped.flatten(), &mut errs) else {
                    return SearchOutcome { errors: errs, ..Default::default() };
                };
                let mut o = ctx.scan(&mut left, i + 1..n, false);
                o.errors.extend(errs);
                o
            })
            .collect::<Vec<_>>(),
    };
    parts.push(SearchOutcome { errors, ..Default::default() });
    Ok(merge(parts))
}

impl fmt::Display for SearchHit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ~ ({})", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d5(target: (i64, i64), r: i64) -> SearchSpec {
        SearchSpec::new(FamilyId::D5, vec![Axis::Range { lo: -r, hi: r }, Axis::Range { lo: -r, hi: r }])
            .with_target(ParamPoint::ints(&[target.0, target.1]))
            .with_kinds(&[ResolventKind::One])
    }

    #[test]
    fn grid_points_are_lexicographic() {
        let s = d5((0, 1), 1);
        assert_eq!(s.grid_size(), 9);
        assert_eq!(s.point(0), ParamPoint::ints(&[-1, -1]));
        assert_eq!(s.point(1), ParamPoint::ints(&[-1, 0]));
        assert_eq!(s.point(8), ParamPoint::ints(&[1, 1]));
        for i in 0..9 {
            for &p in &s.primes {
                assert_eq!(fast_residue(&s, i, p), residue(&s.point(i), p));
            }
        }
    }

    #[test]
    fn small_target_search() {
        let out = search_grid(&d5((0, 1), 6)).unwrap();
        let got: Vec<ParamPoint> = out.hits.iter().map(|h| h.b.clone()).collect();
        let want: Vec<ParamPoint> = [[-6, 1], [0, 1], [4, -1], [4, 5]].iter().map(|p| ParamPoint::ints(p)).collect();
        assert_eq!(got, want);
        assert!(out.stats.stage1 < out.stats.pairs);
    }

    #[test]
    fn spec_validation() {
        let mut s = d5((0, 1), 2);
        s.primes = vec![101, 101];
        assert!(s.validate().is_err());
        s.primes = vec![2];
        assert!(s.validate().is_err());
        s.primes = vec![91];
        assert!(s.validate().is_err());
        let mut s = d5((0, 1), 2);
        s.axes[0] = Axis::Range { lo: 1, hi: 0 };
        assert!(s.validate().is_err());
        let mut s = d5((0, 1), 2).with_kinds(&[ResolventKind::Two]);
        s.certify = Certify::Exact;
        assert!(s.validate().is_err());
    }
}
