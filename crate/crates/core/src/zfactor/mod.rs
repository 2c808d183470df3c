//! Factorization over Q (Zassenhaus) and decomposition types.

mod dt;
pub mod fp;
mod hensel;

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modp::{self, bigint_mod};
use crate::qpoly::{zpoly, QPoly, Rat};

pub use dt::{decomposition_type, DecompType};

pub const DEFAULT_DEGREE_CAP: usize = 16;

static GLOBAL_SEED: AtomicU64 = AtomicU64::new(0x5eed);

/// Mixes into the equal-degree splitting seed. Results never depend on it;
/// only the random choices made on the way do.
pub fn set_seed(seed: u64) {
    GLOBAL_SEED.store(seed, Ordering::Relaxed);
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub poly: QPoly,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "crate::qpoly::rat_string")]
    pub unit: Rat,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn expand(&self) -> QPoly {
        self.factors
            .iter()
            .fold(QPoly::constant(self.unit.clone()), |acc, f| &acc * &f.poly.pow(f.mult))
    }

    /// Factor degrees with multiplicity, descending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.poly.deg(), f.mult as usize))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.mult == 1)
    }

    pub fn linear_factors(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter().filter(|f| f.poly.deg() == 1)
    }
}

pub fn factor_over_q(p: &QPoly) -> Result<Factorization> {
    factor_with_cap(p, DEFAULT_DEGREE_CAP)
}

pub fn factor_with_cap(p: &QPoly, cap: usize) -> Result<Factorization> {
    let n = p.degree().ok_or(Error::DivisionByZeroPoly)?;
    if n > cap {
        return Err(Error::DegreeTooLarge { degree: n, cap });
    }
    let mut factors = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        let (_, z) = part.primitive_integer();
        for g in factor_squarefree_cached(&z) {
            factors.push(Factor { poly: QPoly::from_bigints(&g).monic(), mult });
        }
    }
    factors.sort_by(|a, b| {
        (a.poly.deg(), a.poly.coeffs()).cmp(&(b.poly.deg(), b.poly.coeffs()))
    });
    Ok(Factorization { unit: p.lc(), factors })
}

type Memo = RwLock<HashMap<Vec<BigInt>, Vec<Vec<BigInt>>>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| RwLock::new(HashMap::new()))
}

const MEMO_LIMIT: usize = 1 << 16;

fn factor_squarefree_cached(z: &[BigInt]) -> Vec<Vec<BigInt>> {
    if let Some(v) = memo().read().unwrap().get(z) {
        return v.clone();
    }
    let v = factor_squarefree_primitive(z);
    let mut m = memo().write().unwrap();
    if m.len() < MEMO_LIMIT {
        m.insert(z.to_vec(), v.clone());
    }
    v
}

fn seeded_rng(z: &[BigInt]) -> ChaCha8Rng {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    z.hash(&mut h);
    ChaCha8Rng::seed_from_u64(h.finish() ^ GLOBAL_SEED.load(Ordering::Relaxed))
}

struct PrimeData {
    p: u64,
    factors: Vec<fp::FpPoly>,
}

/// Irreducible factors of a squarefree primitive integer polynomial with
/// positive leading coefficient, each primitive with positive leading
/// coefficient.
fn factor_squarefree_primitive(z: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = z.len() - 1;
    if n <= 1 {
        return vec![z.to_vec()];
    }
    // X divides: peel it off so every prime sees a nonzero constant.
    if z[0].is_zero() {
        let mut rest = factor_squarefree_primitive(&z[1..]);
        rest.push(vec![BigInt::zero(), BigInt::one()]);
        return rest;
    }
    let mut rng = seeded_rng(z);
    let lc = zpoly::lc(z);

    // Collect a handful of good primes; keep the one with fewest factors and
    // the others' degree patterns for the subset-sum filter.
    let mut candidates: Vec<(u64, Vec<usize>)> = Vec::new();
    let mut p = 5u64;
    let mut tried = 0;
    while candidates.len() < 4 && tried < 400 {
        tried += 1;
        p += 1;
        while !modp::is_prime(p) {
            p += 1;
        }
        if bigint_mod(&lc, p) == 0 {
            continue;
        }
        let fm: fp::FpPoly = z.iter().map(|c| bigint_mod(c, p)).collect();
        if !fp::is_squarefree(&fm, p) {
            continue;
        }
        let pat = fp::degree_pattern(&fp::monic(&fm, p), p);
        if pat.len() == 1 {
            return vec![z.to_vec()];
        }
        candidates.push((p, pat));
    }
    let best = candidates
        .iter()
        .enumerate()
        .min_by_key(|(_, (_, pat))| pat.len())
        .map(|(i, _)| i)
        .expect("a good prime below the search limit");
    let (bp, _) = candidates[best];
    let fm = fp::monic(&z.iter().map(|c| bigint_mod(c, bp)).collect::<Vec<_>>(), bp);
    let data = PrimeData { p: bp, factors: fp::factor_squarefree(&fm, bp, &mut rng) };
    let allowed = allowed_degrees(n, &candidates);
    recombine(z, &data, &allowed)
}

// Degrees d for which every auxiliary prime's pattern has a subset summing to d.
fn allowed_degrees(n: usize, candidates: &[(u64, Vec<usize>)]) -> Vec<bool> {
    let mut ok = vec![true; n + 1];
    for (_, pat) in candidates {
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for &d in pat {
            for s in (d..=n).rev() {
                if reach[s - d] {
                    reach[s] = true;
                }
            }
        }
        for (o, r) in ok.iter_mut().zip(reach) {
            *o &= r;
        }
    }
    ok
}

fn recombine(z: &[BigInt], data: &PrimeData, allowed: &[bool]) -> Vec<Vec<BigInt>> {
    let n = z.len() - 1;
    let lc = zpoly::lc(z);
    let p = data.p;
    // Coefficient bound on lc times any factor.
    let bound = lc.abs() * BigInt::from(2) * (BigInt::one() << n) * BigInt::from(n + 1) * zpoly::max_norm(z);
    let (lifted, m) = {
        // Monic f modulo the final modulus.
        let mut mm = BigInt::from(p);
        while mm <= bound {
            mm = &mm * &mm;
        }
        let inv = mod_inverse(&lc, &mm);
        let monic: Vec<BigInt> = z.iter().map(|c| (c * &inv) % &mm).collect();
        hensel::lift(&monic, &data.factors, p, &bound)
    };

    let mut out = Vec::new();
    let mut f: Vec<BigInt> = z.to_vec();
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut k = 1;
    while 2 * k <= remaining.len() {
        let mut found = false;
        let r = remaining.len();
        let lcf = zpoly::lc(&f);
        for subset in Combinations::new(r, k) {
            let d: usize = subset.iter().map(|&i| remaining[i].len() - 1).sum();
            if !allowed[d] {
                continue;
            }
            let mut g = vec![lcf.clone()];
            for &i in &subset {
                g = zpoly::mul(&g, &remaining[i]);
                g = g.iter().map(|c| modp::symmetric_mod(c, &m)).collect();
            }
            let g = zpoly::primitive_part(&g);
            if let Some(q) = zpoly::exact_div(&f, &g) {
                out.push(g);
                f = zpoly::primitive_part(&q);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, x)| x)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            k += 1;
        }
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    use num_integer::Integer;
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Lexicographic k-subsets of 0..n.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let cur = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    }
}

/// Irreducibility witness: a prime (among the first 25 good ones) modulo which
/// the polynomial stays irreducible. Absence proves nothing.
pub fn irreducible_mod_some_prime(f: &QPoly) -> Option<u64> {
    let (_, z) = f.primitive_integer();
    let lc = zpoly::lc(&z);
    let mut seen = 0;
    let mut p = 3u64;
    while seen < 25 {
        p += 2;
        if !modp::is_prime(p) || bigint_mod(&lc, p) == 0 {
            continue;
        }
        let fm: fp::FpPoly = z.iter().map(|c| bigint_mod(c, p)).collect();
        if !fp::is_squarefree(&fm, p) {
            continue;
        }
        seen += 1;
        if fp::degree_pattern(&fp::monic(&fm, p), p).len() == 1 {
            return Some(p);
        }
    }
    None
}
