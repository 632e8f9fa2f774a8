//! Reflection, lattice and polytope invariants over seeded random instances.

use crate::common::*;

#[test]
fn reflections_are_involutions() {
    involution(&mut runner()).unwrap();
}

#[test]
fn reflections_are_isometries() {
    isometry(&mut runner()).unwrap();
}

#[test]
fn roots_pair_to_two_with_their_coroots() {
    coroot_pairing(&mut runner()).unwrap();
}

#[test]
fn cartan_pairings_are_integral() {
    cartan_integrality(&mut runner()).unwrap();
}

#[test]
fn dual_of_dual_is_the_lattice() {
    double_dual(&mut runner()).unwrap();
}

#[test]
fn hermite_form_is_idempotent() {
    hnf_idempotence(&mut runner()).unwrap();
}

#[test]
fn hull_and_constraints_round_trip() {
    hull_round_trip(&mut runner()).unwrap();
}
