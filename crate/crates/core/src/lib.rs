//! Separation of variables and discrete symmetries for spin 1/2 and spin 1
//! particles in Abelian and non-Abelian monopole backgrounds.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod matelem;
pub mod model;
pub mod quadrature;
pub mod radial;
pub mod separation;
pub mod symmetry;
pub mod wigner;

pub use error::{Error, Result};
