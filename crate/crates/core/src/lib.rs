//! Field isomorphism and intersection problems for generic polynomials of
//! the cubic, biquadratic and dihedral quintic families over ℚ.

pub mod error;
pub mod families;
pub mod intersect;
pub mod modp;
pub mod numres;
pub mod qpoly;
pub mod zfactor;

pub use error::{Error, Result};
pub use families::{Certification, FamilyId, ParamPoint, ResolventKind, RhoCache, Witness};
pub use intersect::{ClassifyOptions, GroupLabel, IntersectionReport, Relation};
pub use qpoly::{QPoly, Rat};
pub use zfactor::{DecompType, Factorization};
