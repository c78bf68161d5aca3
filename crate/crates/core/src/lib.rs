//! Colored inner-triangle-free triangulations of a convex polygon, the flip
//! action of the affine Weyl group C̃ₙ on them, the coset representatives
//! `Rₙ` and the colored flip graph `Γₙ`.
//!
//! The crate is organized bottom-up:
//!
//! - [`geometry`]: chords, triangulations, validation, flips and the
//!   bijection with `ℤ_{n+4} × ℤ₂ⁿ`.
//! - [`coxeter`]: words in `s₀..sₙ`, their action on vectors, the affine
//!   realization on `ℝⁿ` and a hyperplane-count length.
//! - [`representatives`]: exponent vectors for `Rₙ`, the weak order and its
//!   lattice operations.
//! - [`flipgraph`]: the Schreier graph, BFS, closed-form distance and
//!   diameter, antipodes and exports.
//! - [`render`]: SVG drawing of a single triangulation.
//! - [`verify`]: invariant suites with a pass/fail table.

pub mod coxeter;
pub mod error;
pub mod flipgraph;
pub mod geometry;
pub mod render;
pub mod representatives;
pub mod verify;

pub use coxeter::{AffineMap, Word};
pub use error::{Error, Result};
pub use flipgraph::FlipGraph;
pub use geometry::{Chord, ColoredTriangulation, PhiVector};
pub use representatives::RepVector;

/// Number of polygon vertices for parameter `n`.
#[inline]
pub fn polygon_size(n: usize) -> usize {
    n + 4
}

/// `(n+4)·2ⁿ`, the number of colored triangle-free triangulations.
pub fn ctft_count(n: usize) -> usize {
    (n + 4) << n
}

/// Largest `n` for which bit-packed vectors are supported.
pub const MAX_N: usize = 60;
