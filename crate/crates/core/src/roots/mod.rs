//! Finite and affine root systems: diagrams, realizations, alcoves,
//! reflections and vertex-local subsystems.

pub mod build;
pub mod cartan;
pub mod functional;
pub mod system;
pub mod weyl;

pub use build::{build, build_affine_twisted, build_affine_untwisted, build_finite, fold_cyclic, product, FactorSpec};
pub use cartan::{CartanMatrix, CartanType, ComponentType, Family};
pub use functional::AffineFunctional;
pub use system::{AffineRootSystem, FiniteSubsystem};
pub use weyl::WeylElement;
