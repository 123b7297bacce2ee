//! Independence complexes of finite graphs.
//!
//! The crate computes exact reduced rational homology of `I(G)`, builds
//! lower-bound certificates from induced matchings with dominating
//! transversals (cross-cycles paired against transversal cocycles), and
//! upper bounds by enumerating residual graphs over the independent sets of a
//! separator set. Periodic Kagome and triangular-derived lattices, together
//! with their large-tile decompositions, are generated here as well.
//!
//! Everything in this crate is `no_std` + `alloc`; file formats, reports and
//! the command-line front end live in the `indcomplex` crate.
#![no_std]

extern crate alloc;

pub mod bitset;
pub mod bounds;
pub mod canon;
pub mod complex;
pub mod cross;
mod error;
pub mod graph;
pub mod homology;
pub mod lattice;
pub mod linalg;
pub mod rate;
pub mod splitting;
pub mod templates;

pub use bitset::VertexSet;
pub use canon::{canonical_code, CanonicalCode};
pub use complex::{independence_complex, SimplicialComplex};
pub use error::{Error, Result};
pub use graph::Graph;
pub use homology::{betti_numbers, join_betti, total_betti, witten_index, BettiVector};

/// Default cap on the number of faces an enumeration may produce.
pub const DEFAULT_FACE_CAP: usize = 50_000_000;
