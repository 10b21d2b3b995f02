//! Every chapter of the guide in `book/` is attached to a module here, so
//! `cargo test` runs its listings as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/linear-algebra.md")]
pub mod linear_algebra {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/truncated-algebra.md")]
pub mod truncated_algebra {}
#[doc = include_str!("../../../book/src/invariant.md")]
pub mod invariant {}
#[doc = include_str!("../../../book/src/reconstruction.md")]
pub mod reconstruction {}
#[doc = include_str!("../../../book/src/whitney-moves.md")]
pub mod whitney_moves {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
