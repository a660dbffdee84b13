//! Finite ring construction: compositional ring descriptions, materialized
//! index tables for their arithmetic, unit enumeration, the Jacobson
//! radical, quotients, and principal left ideals.

mod ideal;
mod parse;
mod spec;
mod table;

pub use ideal::{Ideal, QuotientMap, Side};
pub use parse::parse_ring_spec;
pub use spec::{GfSpec, RingSpec};
pub use table::{RingTable, MAX_RING_SIZE};
