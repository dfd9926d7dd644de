//! Exact computation of the degree of graded modules over `F_p`, and the
//! machinery to compare its two additivity formulas: the algebraic one over
//! minimal primes and the equivariant one over maximal Quillen pairs.

pub mod assemble;
pub mod cohmodel;
pub mod corpus;
mod fp;
pub mod grpcat;
pub mod monalg;
mod poly;
pub mod series;
pub mod wmod;

pub use monalg::{GradedModule, MonIdeal, MonPrime, MonRingMap, WeightedRing};
pub use series::SeriesExpr;

/// Serializes rationals as `p/q` strings (`q = 1` elided).
pub mod ratio_str {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }
}
