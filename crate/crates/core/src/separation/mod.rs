//! Reduction of the wave operator on an ansatz to a radial system.

pub mod compare;
pub mod formal;
pub mod golden;
pub mod reduce;
pub mod system;

pub use compare::{systems_equal, systems_equal_on_support, EqualityReport};
pub use formal::separate_exact;
pub use golden::{golden_system, GoldenName, GoldenParams, Variant};
pub use reduce::{reduce, ReduceOptions, Reduction};
pub use system::{Kind, RadialRow, RadialSystem};
