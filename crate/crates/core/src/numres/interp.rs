//! Exact interpolation of the parameter map `ρ` from rational configurations.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::{Bivariate, BivariateRational, RhoCache};
use crate::qpoly::{rat, QPoly, Rat};

fn orbit(x: &Rat, y: &Rat) -> Option<[Rat; 5]> {
    if x.is_zero() || y.is_zero() {
        return None;
    }
    let one = Rat::one();
    Some([
        x.clone(),
        y.clone(),
        (&one - y) / x,
        (x + y - &one) / (x * y),
        (&one - x) / y,
    ])
}

/// `(s, t)` of the Brumer quintic with root orbit generated by `(x, y)`.
fn params(x: &Rat, y: &Rat) -> Option<(Rat, Rat)> {
    let o = orbit(x, y)?;
    let p = QPoly::from_roots(&o);
    Some((p.coeff(1), p.coeff(0)))
}

fn rho_xy(x: &Rat, y: &Rat) -> Option<(Rat, Rat)> {
    let one = Rat::one();
    let d1 = x - &one;
    let d2 = x + y - &one;
    if d1.is_zero() || d2.is_zero() {
        return None;
    }
    Some((x / d1, (y - &one) / d2))
}

/// A sample `((s,t), (ρs, ρt))`, or `None` at a degenerate configuration.
fn sample(x: &Rat, y: &Rat) -> Option<((Rat, Rat), (Rat, Rat))> {
    let (s, t) = params(x, y)?;
    let (x2, y2) = rho_xy(x, y)?;
    let img = params(&x2, &y2)?;
    if t.is_zero() {
        return None;
    }
    Some(((s, t), img))
}

fn monomials(d: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for tot in 0..=d {
        for i in (0..=tot).rev() {
            v.push((i, tot - i));
        }
    }
    v
}

fn mono_eval(s: &Rat, t: &Rat, (i, j): (usize, usize)) -> Rat {
    num_traits::pow(s.clone(), i) * num_traits::pow(t.clone(), j)
}

/// Basis of the right nullspace, by reduced row echelon form.
fn nullspace(mut m: Vec<Vec<Rat>>, cols: usize) -> Vec<Vec<Rat>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let d = &f * &m[row][c];
                    m[r][c] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

fn to_bivariate(mons: &[(usize, usize)], coeffs: &[Rat]) -> Bivariate {
    let ds = mons.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(m, _)| m.0).max().unwrap_or(0);
    let dt = mons.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(m, _)| m.1).max().unwrap_or(0);
    let mut table = vec![vec![Rat::zero(); dt + 1]; ds + 1];
    for (&(i, j), c) in mons.iter().zip(coeffs) {
        if !c.is_zero() {
            table[i][j] = c.clone();
        }
    }
    Bivariate::from_rats(table)
}

/// Finds `N/D` of total degree `≤ d` through the samples; `None` unless the
/// solution is unique up to scaling.
fn fit(samples: &[((Rat, Rat), Rat)], d: usize) -> Option<BivariateRational> {
    let mons = monomials(d);
    let m = mons.len();
    let rows: Vec<Vec<Rat>> = samples
        .iter()
        .map(|((s, t), v)| {
            let mut r: Vec<Rat> = mons.iter().map(|&k| mono_eval(s, t, k)).collect();
            r.extend(mons.iter().map(|&k| -(v * mono_eval(s, t, k))));
            r
        })
        .collect();
    let ns = nullspace(rows, 2 * m);
    if ns.len() != 1 {
        return None;
    }
    let v = &ns[0];
    let lead = v[m..].iter().find(|c| !c.is_zero())?.clone();
    let v: Vec<Rat> = v.iter().map(|c| c / &lead).collect();
    Some(BivariateRational { num: to_bivariate(&mons, &v[..m]), den: to_bivariate(&mons, &v[m..]) })
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-60..=60), rng.gen_range(1..=9))
}

/// Derives `ρ` as a pair of exact bivariate rational functions and checks it.
pub fn derive_rho_map(sample_budget: usize, degree_cap: usize) -> Result<RhoCache> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7268_6f);
    let draw = |rng: &mut ChaCha8Rng| loop {
        if let Some(s) = sample(&random_rat(rng), &random_rat(rng)) {
            return s;
        }
    };
    let mut pool = Vec::new();
    let mut fitted: [Option<BivariateRational>; 2] = [None, None];
    for d in 1..=degree_cap {
        let need = 2 * monomials(d).len() + 4;
        if need > sample_budget {
            break;
        }
        while pool.len() < need {
            pool.push(draw(&mut rng));
        }
        for (k, slot) in fitted.iter_mut().enumerate() {
            if slot.is_none() {
                let pts: Vec<_> = pool
                    .iter()
                    .map(|(p, img)| (p.clone(), if k == 0 { img.0.clone() } else { img.1.clone() }))
                    .collect();
                *slot = fit(&pts, d);
            }
        }
        if fitted.iter().all(Option::is_some) {
            break;
        }
    }
    let [Some(rs), Some(rt)] = fitted else {
        return Err(Error::DegreeCapExceeded(degree_cap));
    };
    let cache = RhoCache::new(rs, rt);
    let lift = |r: &Rat| Some(r.clone());

    for _ in 0..20 {
        let ((s, t), img) = draw(&mut rng);
        match cache.eval(&s, &t, &lift) {
            Some(v) if v == img => {}
            _ => return Err(Error::VerificationFailed("interpolant disagrees with a fresh sample".into())),
        }
    }
    let mut checked = 0;
    while checked < 50 {
        let (s, t) = (random_rat(&mut rng), random_rat(&mut rng));
        let Some((s1, t1)) = cache.eval(&s, &t, &lift) else { continue };
        let Some(back) = cache.eval(&s1, &t1, &lift) else { continue };
        if back != (s, t) {
            return Err(Error::VerificationFailed("rho is not an involution".into()));
        }
        checked += 1;
    }
    cache.verify().map_err(|e| Error::VerificationFailed(e.to_string()))?;
    Ok(cache)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::int;

    #[test]
    fn configuration_gives_brumer_shape() {
        let (x, y) = (int(2), int(3));
        let o = orbit(&x, &y).unwrap();
        let p = QPoly::from_roots(&o);
        let (s, t) = params(&x, &y).unwrap();
        assert_eq!(p, QPoly::from_coeffs(crate::families::formulas::brumer_coeffs(&s, &t)));
    }

    #[test]
    fn derived_map_is_the_closed_form() {
        let c = derive_rho_map(400, 4).unwrap();
        let lift = |r: &Rat| Some(r.clone());
        let (s, t) = c.eval(&int(0), &int(3), &lift).unwrap();
        assert_eq!((s, t), (rat(5, 3), rat(-1, 3)));
        let json = c.to_json();
        assert_eq!(RhoCache::from_json(&json).unwrap(), c);
    }

    #[test]
    fn tiny_cap_fails() {
        assert_eq!(derive_rho_map(400, 1).unwrap_err(), Error::DegreeCapExceeded(1));
    }

    #[test]
    fn nullspace_of_rank_one_row() {
        let ns = nullspace(vec![vec![int(1), int(2), int(3)]], 3);
        assert_eq!(ns.len(), 2);
    }
}
