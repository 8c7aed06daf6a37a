//! Compiles every Rust listing in `book/src` as a doc-test.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}

#[doc = include_str!("../../../book/src/sets.md")]
pub mod sets {}

#[doc = include_str!("../../../book/src/systems.md")]
pub mod systems {}

#[doc = include_str!("../../../book/src/correlations.md")]
pub mod correlations {}

#[doc = include_str!("../../../book/src/topology.md")]
pub mod topology {}

#[doc = include_str!("../../../book/src/monte_carlo.md")]
pub mod monte_carlo {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
