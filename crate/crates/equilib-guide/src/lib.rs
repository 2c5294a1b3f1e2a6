//! Keeps the guide honest: each module includes one chapter of `book/` as
//! its documentation, so every Rust snippet in the book runs as a doc-test
//! of this crate. `cargo test --workspace` therefore fails whenever the
//! book and the library drift apart.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/grids.md")]
pub mod grids {}

#[doc = include_str!("../../../book/src/envelopes.md")]
pub mod envelopes {}

#[doc = include_str!("../../../book/src/bifunctions.md")]
pub mod bifunctions {}

#[doc = include_str!("../../../book/src/properties.md")]
pub mod properties {}

#[doc = include_str!("../../../book/src/solvers.md")]
pub mod solvers {}

#[doc = include_str!("../../../book/src/harness.md")]
pub mod harness {}
