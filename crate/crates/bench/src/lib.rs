//! Benchmark fixtures shared by the criterion targets.

use gal_core::ParamPoint;

/// The worked pair `(0,3)`, `(10,3)`.
pub fn reference_pair() -> (ParamPoint, ParamPoint) {
    (ParamPoint::ints(&[0, 3]), ParamPoint::ints(&[10, 3]))
}
