//! Spherical pairs `(P, Λ)`: vertex weight monoids, matching against a
//! catalog of smooth affine local models, and the assembled root system.

pub mod builtins;
pub mod catalog;
pub mod check;

pub use builtins::{builtin, builtin_examples, example_group, run_example, BuiltinExample, ExampleOutcome, Expectation};
pub use catalog::{Catalog, CatalogFile, CompleteRecord, LocalModelEntry, ModelRecord};
pub use check::{
    check_pair, check_vertex, monoid_equal, restrict_root, weight_monoid_at, IntegralPair, Overall, PhiM, VerificationReport, VertexRecord,
    VertexStatus, WeightMonoid,
};
