//! Exact local Gauss sums, Artin conductors and Iwasawa-tower data for
//! tame extensions of p-adic fields, with verification suites for the
//! identities they satisfy.

pub mod error;
pub mod exactnum;
pub mod gauss;
pub mod groups;
pub mod krings;
pub mod lattices;
pub mod localfields;
pub mod suite;
pub mod tower;

pub use error::{Error, Result};

/// Exact cyclotomic numbers with rational coefficients.
pub type Cyc = exactnum::CycNum<num_rational::BigRational>;
/// Floating-point cyclotomic numbers, for diagnostics.
pub type CycF64 = exactnum::CycNum<f64>;
