//! Exact computations on pure O-sequences: binomial expansions and Macaulay
//! bounds, monomial order ideals, purity decisions and enumerations, monomial
//! level algebras with Lefschetz rank checks, and pure f-vectors.

pub mod error;
pub mod level;
pub mod linalg;
pub mod macaulay;
pub mod monomial;
pub mod purity;
pub mod sequence;
pub mod simplicial;

pub use error::{Error, Result};
pub use macaulay::{BinomialExpansion, IntSeq};
pub use monomial::{Monomial, OrderIdeal};
