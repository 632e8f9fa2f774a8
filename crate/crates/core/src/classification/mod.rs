//! Primitive roots, ambiguous reflections, the `Φ_∅` table, the simple
//! system validator, global assembly of local root systems and the
//! stalk-level data of the automorphism sheaf.

pub mod ambiguity;
pub mod assemble;
pub mod stalks;
pub mod table;
pub mod validate;

use crate::error::{Error, Result};
use crate::exact::Lattice;
use crate::roots::AffineRootSystem;

pub use ambiguity::{ambiguous_reflections, primitive_functional, root_systems_for, s_amb_of, AmbiguityEntry, AmbiguityReport};
pub use assemble::{assemble_global, AssembledSystem, LocalRootAssignment, LocalRoots};
pub use stalks::{
    adjoint_decompose, commensurable_adjoint, component_group_adjoint, component_group_general, d_i, h0_component_data, kernel_stalk,
    restriction_commutes, stalk_sequence_check, H0Entry, SequenceReport,
};
pub use table::{p2_table, phi_empty_classify, P2Outcome, P2Row};
pub use validate::{validate_simple_system, ValidatedSystem};

/// A root system together with a weight lattice `Λ`
/// (`Φ̄ ⊂ Λ`, `Φ̄^∨ ⊆ Λ^∨`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralRootSystem {
    pub sys: AffineRootSystem,
    pub lattice: Lattice,
}

impl IntegralRootSystem {
    pub fn new(sys: AffineRootSystem, lattice: Lattice) -> Result<Self> {
        if !sys.is_weight_lattice(&lattice) {
            return Err(Error::ValidationFailure(format!("{} is not a weight lattice for {}", lattice, sys.name)));
        }
        Ok(IntegralRootSystem { sys, lattice })
    }

    /// `(Φ, ZΦ̄)`, which requires `Φ̄` to span the ambient translations.
    pub fn adjoint(sys: AffineRootSystem) -> Result<Self> {
        let l = sys.root_lattice();
        IntegralRootSystem::new(sys, l)
    }
}
