//! Exact arithmetic: rationals, Gaussian rationals, dense matrices, integer
//! normal forms and lattice decisions.

pub mod gaussian;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod rational;

pub use gaussian::GaussianRational;
pub use lattice::{
    cokernel_map, lattice_member, solve_linear, LinearSolution, MembershipWitness, Obstruction,
    PreparedLattice,
};
pub use matrix::{ExactText, GaussianMatrix, Matrix, RationalMatrix, Scalar};
pub use normal_form::{hnf, snf, SnfDecomposition};
pub use rational::{int, parse_rational, rat, rational_text, Rational};
