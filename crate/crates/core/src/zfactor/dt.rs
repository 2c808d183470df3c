//! Decomposition types, including inference through repeated factors.
//!
//! Every block of a resolvent is irreducible or a power of an irreducible, so
//! a factor `g^m` can stand for any split of `m` into block exponents. Each
//! split gives a candidate partition; a context of admissible partitions picks
//! the consistent one.

use serde::{Deserialize, Serialize};

use super::{factor_over_q, Factorization};
use crate::error::{Error, Result};
use crate::qpoly::QPoly;

const CANDIDATE_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecompType {
    /// Block degrees, descending.
    pub partition: Vec<usize>,
    pub squarefree: bool,
    /// Observed (factor degree, multiplicity) pairs.
    pub power_profile: Vec<(usize, u32)>,
}

impl DecompType {
    pub fn contains_one(&self) -> bool {
        self.partition.contains(&1)
    }

    pub fn degree(&self) -> usize {
        self.partition.iter().sum()
    }
}

impl std::fmt::Display for DecompType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.partition.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

pub fn decomposition_type(p: &QPoly, context: Option<&[Vec<usize>]>) -> Result<DecompType> {
    let fac = factor_over_q(p)?;
    dt_from_factorization(&fac, context)
}

pub fn dt_from_factorization(fac: &Factorization, context: Option<&[Vec<usize>]>) -> Result<DecompType> {
    let profile: Vec<(usize, u32)> = fac.factors.iter().map(|f| (f.poly.deg(), f.mult)).collect();
    let squarefree = fac.is_squarefree();
    let candidates = candidate_partitions(&profile)?;
    let mut hits: Vec<Vec<usize>> = match context {
        Some(ctx) => candidates.into_iter().filter(|c| ctx.contains(c)).collect(),
        None => candidates,
    };
    hits.dedup();
    match hits.len() {
        0 => Err(Error::NoConsistentDT),
        1 => Ok(DecompType { partition: hits.pop().unwrap(), squarefree, power_profile: profile }),
        n => Err(Error::AmbiguousDT(n)),
    }
}

/// All partitions obtainable by splitting each repeated factor into blocks,
/// sorted and deduplicated.
pub fn candidate_partitions(profile: &[(usize, u32)]) -> Result<Vec<Vec<usize>>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for &(d, m) in profile {
        let splits = integer_partitions(m);
        let mut next = Vec::new();
        for base in &acc {
            for sp in &splits {
                let mut v = base.clone();
                v.extend(sp.iter().map(|&k| k as usize * d));
                next.push(v);
                if next.len() > CANDIDATE_LIMIT {
                    return Err(Error::AmbiguousDT(next.len()));
                }
            }
        }
        acc = next;
    }
    for v in acc.iter_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    acc.sort();
    acc.dedup();
    Ok(acc)
}

fn integer_partitions(m: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            cur.push(k);
            go(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn squarefree_partition() {
        let d = decomposition_type(&(&p(&[-1, 1]) * &p(&[1, 0, 1])), None).unwrap();
        assert_eq!(d.partition, vec![2, 1]);
        assert!(d.squarefree);
    }

    #[test]
    fn repeated_factor_needs_context() {
        let f = &(&p(&[5, 1]).pow(3) * &p(&[150, -15, 1])) * &p(&[-9375, 0, -625, 0, 0, 1]);
        assert_eq!(decomposition_type(&f, None), Err(Error::AmbiguousDT(3)));
        let ctx = vec![vec![10], vec![5, 5], vec![5, 2, 2, 1]];
        let d = decomposition_type(&f, Some(&ctx)).unwrap();
        assert_eq!(d.partition, vec![5, 2, 2, 1]);
        assert!(!d.squarefree);
        assert_eq!(d.power_profile, vec![(1, 3), (2, 1), (5, 1)]);
        let none = vec![vec![10]];
        assert_eq!(decomposition_type(&f, Some(&none)), Err(Error::NoConsistentDT));
    }

    #[test]
    fn partitions_of_small_integers() {
        assert_eq!(integer_partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(integer_partitions(5).len(), 7);
    }
}
