//! High-precision numeric engine: roots, Tschirnhausen coefficients, numeric
//! resolvents and rationalization. Serves as the oracle for the closed forms.

pub mod bigfloat;
pub mod complex;
mod d5;
mod interp;
mod rational;
mod roots;
mod tschirn;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{family_poly, FamilyId, ParamPoint};
use crate::qpoly::{QPoly, Rat};

pub use bigfloat::{bits_for_digits, BigFloat};
pub use complex::{horner, poly_from_roots, Complex};
pub use d5::{brumer_configs, config_pairs, p_invariant, quintic_to_brumer, rho_image, ConfigPair};
pub use interp::derive_rho_map;
pub use rational::{rationalize, rationalize_poly, rationalize_scaled};
pub use roots::{find_roots, real_parts};
pub use tschirn::{tschirnhausen_coefficients, TschirnCoeffs};

pub const DEFAULT_DIGITS: u32 = 128;
pub const MIN_DIGITS: u32 = 50;
pub const MAX_DIGITS: u32 = 4096;

/// Decimal digits carried by a binary precision.
pub fn digits_for_prec(prec: u64) -> u32 {
    ((prec.saturating_sub(32)) as f64 / std::f64::consts::LOG2_10).floor() as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NumKind {
    #[serde(rename = "S3-theta")]
    S3Theta,
    #[serde(rename = "D5-P")]
    D5P,
    #[serde(rename = "D5-rhoP")]
    D5RhoP,
}

fn s3_roots(a: &Rat, digits: u32) -> Result<Vec<Complex>> {
    let f = family_poly(FamilyId::S3, &ParamPoint(vec![a.clone()]))?;
    find_roots(&f, digits)
}

/// Complex coefficients (ascending) of the requested numeric resolvent at a
/// single precision.
pub fn numeric_resolvent(
    fam: FamilyId,
    a: &ParamPoint,
    b: &ParamPoint,
    kind: NumKind,
    digits: u32,
) -> Result<Vec<Complex>> {
    a.check_arity(fam)?;
    b.check_arity(fam)?;
    match (fam, kind) {
        (FamilyId::S3, NumKind::S3Theta) => {
            let alpha = s3_roots(a.get(0), digits)?;
            let beta = s3_roots(b.get(0), digits)?;
            let prec = alpha[0].prec().max(beta[0].prec());
            let alpha: Vec<Complex> = alpha.iter().map(|z| z.with_prec(prec)).collect();
            let beta: Vec<Complex> = beta.iter().map(|z| z.with_prec(prec)).collect();
            let wd = digits_for_prec(prec);
            let three = Complex::from_i64(3, prec);
            let mut thetas = Vec::with_capacity(6);
            for perm in d5::permutations(3) {
                let bp: Vec<Complex> = perm.iter().map(|&k| beta[k].clone()).collect();
                let u = tschirnhausen_coefficients(&alpha, &bp, wd)?.u;
                if u[2].is_zero() {
                    return Err(Error::IllConditioned);
                }
                thetas.push(&(&three * &u[1]) / &u[2]);
            }
            let lc = Complex::from_rat(&(a.get(0) - b.get(0)), prec);
            Ok(poly_from_roots(&thetas, prec).iter().map(|c| c * &lc).collect())
        }
        (FamilyId::D5, NumKind::D5P | NumKind::D5RhoP) => {
            family_poly(FamilyId::D5, a)?;
            family_poly(FamilyId::D5, b)?;
            let ca = brumer_configs(a, digits)?;
            let cb = brumer_configs(b, digits)?;
            let prec = ca[0].x.prec().max(cb[0].x.prec());
            let lift = |c: &ConfigPair| ConfigPair { x: c.x.with_prec(prec), y: c.y.with_prec(prec) };
            let fixed = lift(&cb[0]);
            let mut vals = Vec::with_capacity(10);
            for c in &ca {
                let c = lift(c);
                let c = if kind == NumKind::D5RhoP { c.rho().ok_or(Error::DegenerateDenominator)? } else { c };
                vals.push(p_invariant(&c, &fixed).ok_or(Error::DegenerateDenominator)?);
            }
            Ok(poly_from_roots(&vals, prec))
        }
        _ => Err(Error::Unsupported(format!("numeric resolvent {kind:?} for family {fam}"))),
    }
}

/// The numeric resolvent rationalized to an exact polynomial, escalating the
/// precision until every coefficient is recovered.
pub fn numeric_resolvent_exact(
    fam: FamilyId,
    a: &ParamPoint,
    b: &ParamPoint,
    kind: NumKind,
    digits: u32,
) -> Result<QPoly> {
    let mut d = digits.clamp(MIN_DIGITS, MAX_DIGITS);
    loop {
        let last = match numeric_resolvent(fam, a, b, kind, d) {
            Ok(c) => match rationalize_poly(&c, d) {
                Some(p) => return Ok(p),
                None => Error::PrecisionExhausted(d),
            },
            Err(e @ (Error::ConfigEnumerationFailed(_) | Error::IllConditioned)) => e,
            Err(e) => return Err(e),
        };
        if d >= MAX_DIGITS {
            return Err(last);
        }
        d = (d * 2).min(MAX_DIGITS);
    }
}

/// Resolvent of `Σ orbit_i(c)^k·orbit_i(c′)`, which has the same stabilizer as
/// `P`; used when repeated factors leave the decomposition type ambiguous.
pub fn twisted_d5_resolvent(a: &ParamPoint, b: &ParamPoint, rho: bool, k: u32, digits: u32) -> Result<QPoly> {
    let mut d = digits.clamp(MIN_DIGITS, MAX_DIGITS);
    loop {
        let ca = brumer_configs(a, d)?;
        let cb = brumer_configs(b, d)?;
        let prec = ca[0].x.prec().max(cb[0].x.prec());
        let fixed = cb[0].orbit().ok_or(Error::DegenerateDenominator)?;
        let mut vals = Vec::with_capacity(10);
        for c in &ca {
            let c = ConfigPair { x: c.x.with_prec(prec), y: c.y.with_prec(prec) };
            let c = if rho { c.rho().ok_or(Error::DegenerateDenominator)? } else { c };
            let orb = c.orbit().ok_or(Error::DegenerateDenominator)?;
            let mut acc = Complex::zero(prec);
            for (u, v) in orb.iter().zip(fixed.iter()) {
                let mut pw = u.clone();
                for _ in 1..k {
                    pw = &pw * u;
                }
                acc = &acc + &(&pw * &v.with_prec(prec));
            }
            vals.push(acc);
        }
        if let Some(p) = rationalize_poly(&poly_from_roots(&vals, prec), d) {
            return Ok(p);
        }
        if d >= MAX_DIGITS {
            return Err(Error::PrecisionExhausted(d));
        }
        d = (d * 2).min(MAX_DIGITS);
    }
}
