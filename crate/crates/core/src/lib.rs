//! Exact combinatorics of permutation polytopes of cyclic permutation groups.
//!
//! A cyclic group `G = <g>` is described by the cycle type of its generator.
//! Vertices `g^k` are realized as 0/1 vectors by taking the first row of each
//! orbit block of the permutation matrix, which is a lattice isomorphism onto
//! the image. Everything in this crate is exact: integers are arbitrary
//! precision where they can grow, and all linear algebra runs over the
//! rationals.

pub mod arith;
pub mod ehrhart;
pub mod embed;
mod error;
pub mod facets3;
pub mod group;
pub mod hull;
pub mod linalg;
pub mod rational;
pub mod serde_num;
pub mod structure;

pub use error::{Error, Result};
pub use group::{CycleType, GroupIndex};
