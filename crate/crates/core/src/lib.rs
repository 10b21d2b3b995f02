//! Truncated group-algebra invariants of based multigraphs.
//!
//! A closed walk at the base vertex spells a word in the edges. Embedding that
//! word in the truncated free algebra `k[F_E] / J^{k+1}` and spanning over all
//! closed walks gives a subalgebra; at level 1 it is the cycle space, at level
//! 2 it pins down 2-edge-connected graphs up to isomorphism.
//!
//! The guide in `book/` walks through the constructions with runnable
//! listings.

pub mod error;
pub mod field;
pub mod graph;
pub mod harness;
pub mod invariant;
pub mod linalg;
pub mod reconstruct;
pub mod text;
pub mod trunc;
pub mod whitney;

pub use error::{Error, Result};
