//! Cross-ratio configurations of Brumer quintic roots.

use super::complex::{poly_from_roots, Complex};
use super::rational::rationalize_poly;
use super::roots::find_roots;
use crate::error::{Error, Result};
use crate::families::formulas::brumer_coeffs;
use crate::families::ParamPoint;
use crate::qpoly::{height_key, QPoly, Rat};

/// A pair `(x, y)` whose orbit is the root set of a Brumer quintic.
#[derive(Clone, Debug)]
pub struct ConfigPair {
    pub x: Complex,
    pub y: Complex,
}

impl ConfigPair {
    /// `x, y, (1−y)/x, (x+y−1)/(xy), (1−x)/y`; `None` when `x` or `y` vanishes.
    pub fn orbit(&self) -> Option<[Complex; 5]> {
        if self.x.is_zero() || self.y.is_zero() {
            return None;
        }
        let prec = self.x.prec();
        let one = Complex::from_i64(1, prec);
        let (x, y) = (&self.x, &self.y);
        let xy = x * y;
        Some([
            x.clone(),
            y.clone(),
            &(&one - y) / x,
            &(&(x + y) - &one) / &xy,
            &(&one - x) / y,
        ])
    }

    /// The fractional-linear action `x ↦ x/(x−1)`, `y ↦ (y−1)/(x+y−1)`.
    pub fn rho(&self) -> Option<ConfigPair> {
        let one = Complex::from_i64(1, self.x.prec());
        let d1 = &self.x - &one;
        let d2 = &(&self.x + &self.y) - &one;
        if d1.is_zero() || d2.is_zero() {
            return None;
        }
        Some(ConfigPair { x: &self.x / &d1, y: &(&self.y - &one) / &d2 })
    }
}

/// `P = Σ orbit_i(c)·orbit_i(c′)`.
pub fn p_invariant(c: &ConfigPair, c2: &ConfigPair) -> Option<Complex> {
    let (o1, o2) = (c.orbit()?, c2.orbit()?);
    let mut acc = Complex::zero(c.x.prec());
    for (a, b) in o1.iter().zip(o2.iter()) {
        acc = &acc + &(a * b);
    }
    Some(acc)
}

pub(crate) fn close(a: &Complex, b: &Complex, digits: u32) -> bool {
    let tol = -(digits as f64) * 0.5 * std::f64::consts::LOG2_10;
    (a - b).log2_abs() < tol + a.log2_abs().max(b.log2_abs()).max(0.0)
}

/// Every ordered pair of distinct roots whose orbit reproduces the root set.
pub fn config_pairs(roots: &[Complex], digits: u32) -> Vec<ConfigPair> {
    let n = roots.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let c = ConfigPair { x: roots[i].clone(), y: roots[j].clone() };
            let Some(orb) = c.orbit() else { continue };
            let mut used = vec![false; n];
            used[i] = true;
            used[j] = true;
            let ok = orb[2..].iter().all(|v| {
                match (0..n).find(|&k| !used[k] && close(v, &roots[k], digits)) {
                    Some(k) => {
                        used[k] = true;
                        true
                    }
                    None => false,
                }
            });
            if ok {
                out.push(c);
            }
        }
    }
    out
}

/// The ten configurations of `f_{s,t}`.
pub fn brumer_configs(a: &ParamPoint, digits: u32) -> Result<Vec<ConfigPair>> {
    let f = QPoly::from_coeffs(brumer_coeffs(a.s(), a.t()));
    let roots = find_roots(&f, digits)?;
    let prec = roots.first().map(|r| r.prec()).unwrap_or(64);
    let digits = super::digits_for_prec(prec);
    let cs = config_pairs(&roots, digits);
    if cs.len() != 10 {
        return Err(Error::ConfigEnumerationFailed(cs.len()));
    }
    Ok(cs)
}

/// The cross-ratio `(r0−r3)(r1−r2) / ((r0−r2)(r1−r3))`.
fn cross_ratio(r: [&Complex; 4]) -> Option<Complex> {
    let den = &(r[0] - r[2]) * &(r[1] - r[3]);
    if den.is_zero() {
        return None;
    }
    Some(&(&(r[0] - r[3]) * &(r[1] - r[2])) / &den)
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                go(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn brumer_shape(p: &QPoly) -> Option<ParamPoint> {
    if p.deg() != 5 || !p.is_monic() {
        return None;
    }
    let (s, t) = (p.coeff(1), p.coeff(0));
    let want = QPoly::from_coeffs(brumer_coeffs(&s, &t));
    (want == *p).then(|| ParamPoint(vec![s, t]))
}

fn point_height(p: &ParamPoint) -> Vec<(num_bigint::BigInt, bool)> {
    let mut v: Vec<_> = p.0.iter().map(height_key).collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// Brumer parameters with the same splitting field as `g`, read off from the
/// cross-ratio orbits of orderings of its roots.
pub fn quintic_to_brumer(g: &QPoly, digits: u32) -> Result<ParamPoint> {
    if let Some(p) = brumer_shape(&g.monic()) {
        return Ok(p);
    }
    let perms = permutations(5);
    let mut d = digits;
    for _ in 0..2 {
        let roots = find_roots(g, d)?;
        let mut best: Option<ParamPoint> = None;
        for perm in &perms {
            let r: Vec<&Complex> = perm.iter().map(|&k| &roots[k]).collect();
            let xs: Option<Vec<Complex>> =
                (0..5).map(|k| cross_ratio([r[k], r[(k + 1) % 5], r[(k + 2) % 5], r[(k + 3) % 5]])).collect();
            let Some(xs) = xs else { continue };
            let prec = xs[0].prec();
            let Some(p) = rationalize_poly(&poly_from_roots(&xs, prec), d) else { continue };
            let Some(pt) = brumer_shape(&p) else { continue };
            if best.as_ref().is_none_or(|b| point_height(&pt) < point_height(b)) {
                best = Some(pt);
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
        d = (d * 2).min(super::MAX_DIGITS);
    }
    Err(Error::NotInD5Class)
}

/// Numeric `ρ(a)` from the action on one configuration, rationalized.
pub fn rho_image(a: &ParamPoint, digits: u32) -> Result<ParamPoint> {
    let cs = brumer_configs(a, digits)?;
    let c = cs[0].rho().ok_or(Error::DegenerateDenominator)?;
    let orb = c.orbit().ok_or(Error::DegenerateDenominator)?;
    let prec = c.x.prec();
    let p = rationalize_poly(&poly_from_roots(&orb, prec), digits).ok_or(Error::PrecisionExhausted(digits))?;
    let (s, t): (Rat, Rat) = (p.coeff(1), p.coeff(0));
    Ok(ParamPoint(vec![s, t]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_poly, ht_c5_poly, FamilyId};
    use crate::qpoly::{int, rat};

    #[test]
    fn ten_configurations() {
        for (s, t) in [(0, 3), (10, 3), (0, 1), (-7, 2), (5, -4)] {
            let cs = brumer_configs(&ParamPoint::ints(&[s, t]), 128).unwrap();
            assert_eq!(cs.len(), 10);
        }
    }

    #[test]
    fn rho_is_closed_form() {
        let a = ParamPoint::ints(&[0, 3]);
        assert_eq!(rho_image(&a, 128).unwrap(), ParamPoint(vec![rat(5, 3), rat(-1, 3)]));
        let b = ParamPoint::ints(&[7, -2]);
        assert_eq!(rho_image(&b, 128).unwrap(), ParamPoint(vec![rat(-3, 4), rat(1, 2)]));
    }

    #[test]
    fn brumer_input_is_identity() {
        let f = family_poly(FamilyId::D5, &ParamPoint::ints(&[4, -9])).unwrap();
        assert_eq!(quintic_to_brumer(&f.scale(&int(3)), 128).unwrap(), ParamPoint::ints(&[4, -9]));
    }

    #[test]
    fn ht_c5_has_a_brumer_model() {
        let g = ht_c5_poly(&int(0), &int(1)).unwrap();
        let pt = quintic_to_brumer(&g, 128).unwrap();
        let f = family_poly(FamilyId::D5, &pt).unwrap();
        assert_eq!(f.deg(), 5);
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(5).len(), 120);
    }
}
