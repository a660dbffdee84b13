//! Finite rings, their additive characters, and the averaging operator that
//! sums a function over the dot-product hyperplane `{ y : y . x = t }` in
//! `R^d`. The crate materializes ring arithmetic as index tables, realizes
//! the dual group through explicit nondegenerate pairings, builds the sparse
//! incidence operator of the relation, and measures its operator norm on the
//! mean-zero subspace, normalized to the incidence-Salem number
//! `||A_t|| / |R|^((d-1)/2)`.
//!
//! The `verify` module turns the known inequalities for these operators
//! (field upper bounds, matrix-ring witness lower bounds, product
//! factorization, radical amplification) into machine checks at small scale.

pub mod error;
pub mod harmonic;
pub mod incidence;
pub mod ring;
pub mod util;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
