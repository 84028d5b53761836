//! Exact computational algebra over finitely generated abelian groups:
//! Smith normal form, exterior powers with constructive elementary-operation
//! synthesis, symplectic module automorphisms, birational classification of
//! diagonalizable-group representations, and quantum-torus isomorphism
//! criteria.

pub mod abelian;
pub mod classify;
pub mod error;
pub mod exterior;
pub mod json;
pub mod matrix;
pub mod qtorus;
pub mod selftest;
pub mod symplectic;

pub use abelian::{
    apply_automorphism, canonicalize, dual, is_generating, pair, Character, FinGenAbGroup,
    GroupAutomorphism, GroupElement, QmodZ,
};
pub use classify::{
    birationally_equivalent, class_lower_bound_semidirect, conjugation_twist, count_classes,
    e8_class_count, invariant_i, katsylo_fails, monomial_witness, product_counterexample,
    projective_fixed_points, semidirect_counterexample, semidirect_counterexample_sufficient,
    ClassCount, FixedPointReport, RepSpec,
};
pub use error::{Error, Result};
pub use exterior::{
    apply_elem_op, apply_power_map, class_of, glz_witness, is_generator, replay,
    synthesize_elem_ops, wedge, wedge_power, ElementaryOp, WedgeClass, WedgeComponent,
    WedgeElement, WedgePower,
};
pub use qtorus::{
    brauer_equivalent, commutator_form, default_prime, heisenberg, k_isomorphic, rep_characters,
    span_check, wedge_criterion, FpMatrix, HeisenbergRep, QuantumTorusSpec,
};
pub use symplectic::{
    det_mod_n1, dual_action_matrix, enumerate_form_automorphisms, eval_form, is_alternating,
    is_nondegenerate, is_symplectic, preserves_form, BilinearForm, SymplecticSpace,
};
pub use matrix::{
    det, is_unimodular, pfaffian, pfaffian_congruence_check, snf, solve_linear, standard_gram,
    IntMatrix, RatMatrix, SnfResult,
};
