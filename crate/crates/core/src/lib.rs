//! Symbolic Seiberg-Witten calculus for smooth 4-manifolds.
//!
//! Manifolds are modeled as invariant records (`FourManifold`); knot surgery,
//! fiber sums and torus surgeries act on those records exactly.

pub mod algebra;
pub mod basic_classes;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod geography;
pub mod lefschetz;
pub mod manifold;

pub use error::{Error, Result};
