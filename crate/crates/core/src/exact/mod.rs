//! Exact rational arithmetic, inner products and integer lattices.

pub mod ip;
pub mod lattice;
pub mod linalg;
pub mod rational;

pub use ip::{orthogonal_project, InnerProduct};
pub use lattice::{quotient, AbelianGroupPresentation, Lattice};
pub use linalg::Mat;
pub use rational::{fmt_q, parse_q, qi, qr, Q, Z};
