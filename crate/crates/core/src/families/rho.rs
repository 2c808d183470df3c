//! The exact parameter map behind the second resolvent, as a cached pair of
//! bivariate rational functions.

use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::formulas::Scalar;
use super::{d5_f1, reference_f2, ParamPoint};
use crate::error::{Error, Result};
use crate::qpoly::{QPoly, Rat};

pub const RHO_CACHE_VERSION: u32 = 1;

/// Dense bivariate polynomial; `coeffs[i][j]` multiplies `s^i t^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bivariate {
    pub deg_s: usize,
    pub deg_t: usize,
    pub coeffs: Vec<Vec<String>>,
    #[serde(skip)]
    parsed: Vec<Vec<Rat>>,
}

impl Bivariate {
    pub fn from_rats(coeffs: Vec<Vec<Rat>>) -> Self {
        let deg_s = coeffs.len().saturating_sub(1);
        let deg_t = coeffs.iter().map(|r| r.len()).max().unwrap_or(1).saturating_sub(1);
        let mut parsed = coeffs;
        for row in parsed.iter_mut() {
            row.resize(deg_t + 1, Rat::zero());
        }
        let strings = parsed.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        Bivariate { deg_s, deg_t, coeffs: strings, parsed }
    }

    fn parse(&mut self) -> Result<()> {
        if self.coeffs.len() != self.deg_s + 1 || self.coeffs.iter().any(|r| r.len() != self.deg_t + 1) {
            return Err(Error::RhoCacheInvalid("coefficient table does not match its degree bounds".into()));
        }
        self.parsed = self
            .coeffs
            .iter()
            .map(|r| r.iter().map(|c| crate::qpoly::parse_rat(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()
            .map_err(|e| Error::RhoCacheInvalid(e.to_string()))?;
        Ok(())
    }

    pub fn terms(&self) -> &[Vec<Rat>] {
        &self.parsed
    }

    pub fn eval<S: Scalar>(&self, s: &S, t: &S, lift: &impl Fn(&Rat) -> Option<S>) -> Option<S> {
        let mut acc = s.int(0);
        let mut sp = s.int(1);
        for row in &self.parsed {
            let mut tp = sp.clone();
            for c in row {
                if !c.is_zero() {
                    acc = acc + lift(c)? * tp.clone();
                }
                tp = tp * t.clone();
            }
            sp = sp * s.clone();
        }
        Some(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivariateRational {
    pub num: Bivariate,
    pub den: Bivariate,
}

impl BivariateRational {
    pub fn eval<S: Scalar>(&self, s: &S, t: &S, lift: &impl Fn(&Rat) -> Option<S>) -> Option<S> {
        let n = self.num.eval(s, t, lift)?;
        let d = self.den.eval(s, t, lift)?;
        Some(n * d.inv()?)
    }
}

/// Stored check: the cache must reproduce `f2` as `F¹(ρ(a), b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoSelfCheck {
    pub a: ParamPoint,
    pub b: ParamPoint,
    pub f2: QPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoCache {
    pub version: u32,
    pub rho_s: BivariateRational,
    pub rho_t: BivariateRational,
    pub self_check: RhoSelfCheck,
}

impl RhoCache {
    pub fn new(rho_s: BivariateRational, rho_t: BivariateRational) -> Self {
        RhoCache {
            version: RHO_CACHE_VERSION,
            rho_s,
            rho_t,
            self_check: RhoSelfCheck {
                a: ParamPoint::ints(&[0, 3]),
                b: ParamPoint::ints(&[10, 3]),
                f2: reference_f2(),
            },
        }
    }

    /// Generic evaluation; `None` at a pole or when a coefficient does not
    /// reduce into the scalar ring.
    pub fn eval<S: Scalar>(&self, s: &S, t: &S, lift: &impl Fn(&Rat) -> Option<S>) -> Option<(S, S)> {
        Some((self.rho_s.eval(s, t, lift)?, self.rho_t.eval(s, t, lift)?))
    }

    /// Exact image of a parameter point.
    pub fn apply(&self, a: &ParamPoint) -> Result<ParamPoint> {
        let lift = |r: &Rat| Some(r.clone());
        self.eval(a.s(), a.t(), &lift)
            .map(|(s, t)| ParamPoint(vec![s, t]))
            .ok_or_else(|| Error::ExcludedParameter(format!("rho has a pole at ({a})")))
    }

    /// Checks the version and the stored self-check.
    pub fn verify(&self) -> Result<()> {
        if self.version != RHO_CACHE_VERSION {
            return Err(Error::RhoCacheInvalid(format!("unsupported version {}", self.version)));
        }
        let ra = self.apply(&self.self_check.a).map_err(|e| Error::RhoCacheInvalid(e.to_string()))?;
        if d5_f1(&ra, &self.self_check.b) != self.self_check.f2 || self.self_check.f2 != reference_f2() {
            return Err(Error::RhoCacheInvalid("self-check resolvent does not match".into()));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let mut c: RhoCache = serde_json::from_str(s).map_err(|e| Error::RhoCacheInvalid(e.to_string()))?;
        for b in [&mut c.rho_s.num, &mut c.rho_s.den, &mut c.rho_t.num, &mut c.rho_t.den] {
            b.parse()?;
        }
        c.verify()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cache serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)?;
        Self::from_json(&s)
    }

    /// Writes to a sibling temporary file, then renames over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, self.to_json())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}
