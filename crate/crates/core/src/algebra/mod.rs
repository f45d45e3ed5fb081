//! Exact and floating matrix algebra for the spin 1/2 and spin 1 representations.

pub mod identities;
pub mod linsolve;
pub mod matrix;
pub mod reps;
pub mod surd;

pub use identities::{verify_algebra, AlgebraInput, AlgebraReport, Backend, IdentityReport};
pub use matrix::{ExactMatrix, FloatMatrix, Matrix, MatrixJson, Scalar};
pub use reps::{build_dirac_rep, build_dkp_rep, build_rep, isospin, pauli_matrix, to_spherical_reflection, Representation, Spin};
pub use surd::{rat, snap_complex, snap_real, Exact, Rational, Surd};
