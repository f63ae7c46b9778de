//! Core algorithms for separator-driven graph experiments: balanced
//! separations, bounded-reuse tree decompositions, fractional
//! complementary packings over vertex-removal sets, packing-driven
//! approximation (independent set, subgraph testing), shallow-minor
//! extraction with verifiable certificates, and edge-expansion
//! measurements on small expanders.
//!
//! The crate is `no_std` (with `alloc`): everything operates on in-memory
//! graphs and is pure given explicit seeds. File formats, JSON schemas and
//! the command-line surface live in the companion `sepgrad-cli` crate.

#![no_std]
#![forbid(unsafe_code)]
// Float preconditions use the `!(x > 0.0)` form so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod approx;
mod bitset;
mod error;
pub mod expanders;
pub mod fragility;
pub mod graph;
mod mathx;
pub mod minors;
pub mod separators;
pub mod treedecomp;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
