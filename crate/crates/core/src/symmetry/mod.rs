//! Discrete symmetry operators and the checks built on them.

pub mod compat;
pub mod constraints;
pub mod operator;
pub mod probes;

pub use compat::{compatibility, compatibility_at, Compatibility, Witness};
pub use constraints::{eigen_constraints, ConstraintSet, Relation};
pub use operator::{build_discrete_operator, k_matrix, naive_parity, DiscreteKind, DiscreteOperator};
pub use probes::{
    commutator_check, constrained_profiles, field_with, k_check, minimal_j_image_check, seeded_profiles, self_conjugacy_probe, CommutatorReport, ImageVerdict,
    KReport, MinimalJImage, Profiles, SelfConjugacy,
};
