//! Exact computer algebra for commuting nilpotent matrix tuples, truncated
//! exponentials, and one-parameter subgroups of matrix groups over prime
//! fields and their small extensions.
//!
//! Everything is computed exactly over F_{p^k}; randomized routines take
//! explicit seeds and are reproducible bit for bit.

pub mod bch;
pub mod codec;
pub mod dist;
pub mod error;
pub mod field;
pub mod heisenberg;
pub mod matrix;
pub mod oneparam;
pub mod report;
pub mod rng;
pub mod rootdata;
pub mod truncpoly;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use matrix::{CommutingTuple, SquareMatrix};
pub use rng::SplitMix64;
pub use truncpoly::{PolyMatrix, TruncPoly, TruncPoly2};
