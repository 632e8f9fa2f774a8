//! Exact affine root systems, alcove geometry and verification of
//! spherical pairs `(P, Λ)` by vertex-local weight-monoid matching.
//!
//! All arithmetic is exact over `Q`; there is no floating point outside
//! the SVG renderer.

pub mod error;
pub mod exact;
pub mod polytope;
pub mod roots;
pub mod classification;
pub mod spherical;
pub mod io;
pub mod render;

pub use error::{Error, Result};
pub use exact::{Q, Z};
