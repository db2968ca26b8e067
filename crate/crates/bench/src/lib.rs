//! Inputs shared by the benchmarks.

use salemkit::builtins::{named, SALEM_POLYNOMIALS};
use salemkit::poly::IntPoly;

pub fn salem_polynomials() -> Vec<(&'static str, IntPoly)> {
    SALEM_POLYNOMIALS.iter().map(|(n, _, _)| (*n, named(n).unwrap())).collect()
}

/// Product of all five Salem polynomials, degree 62.
pub fn salem_product() -> IntPoly {
    salem_polynomials().iter().fold(IntPoly::one(), |a, (_, p)| &a * p)
}
