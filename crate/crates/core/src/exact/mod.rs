//! Exact scalar and integer-lattice arithmetic underlying every other module.
//!
//! All values are immutable after construction and all operations are pure.

pub mod lattice;
pub mod matrix;
pub mod scalar;

pub use lattice::{lattice_index, lattice_kernel_mod_z, Lattice, LatticeIndex};
pub use matrix::{
    hermite_normal_form, integer_kernel, smith_normal_form, solve_diophantine, AlphaMat,
    IntMatrix, Snf,
};
pub use scalar::{lcm_u64, rat, rat_int, AlphaRat, CircleValue, Rational};
