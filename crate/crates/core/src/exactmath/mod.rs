//! Exact arithmetic: rationals, finite fields, integer lattices and linear algebra.

pub mod binom;
pub mod field;
pub mod intmat;
pub mod lattice;
pub mod matrix;
pub mod rational;

pub use binom::binom_mod;
pub use field::{Elem, FieldError, FiniteField};
pub use intmat::IntMatrix;
pub use lattice::{IntegerLattice, LatticeError};
pub use matrix::{LinalgError, Matrix, Subspace};
pub use rational::{pairing, Rational};
