//! Doctest harness for the book: each chapter's Rust snippets are pulled
//! in as module documentation, so `cargo test --doc` compiles and runs
//! them against the current library. If a chapter drifts out of sync with
//! the API, the build breaks here.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/manifolds.md")]
pub mod manifolds {}

#[doc = include_str!("../../../book/src/length-functional.md")]
pub mod length_functional {}

#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}

#[doc = include_str!("../../../book/src/homology.md")]
pub mod homology {}

#[doc = include_str!("../../../book/src/torus-cells.md")]
pub mod torus_cells {}

#[doc = include_str!("../../../book/src/sphere-triple.md")]
pub mod sphere_triple {}

#[doc = include_str!("../../../book/src/schubert.md")]
pub mod schubert {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
