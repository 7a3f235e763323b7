//! Exact integer and rational linear algebra.
//!
//! All matrices carry arbitrary-precision integer entries. The submodules
//! provide the normal forms (Smith, Hermite), saturated integer kernels,
//! exact rational/Diophantine solvers and characteristic polynomials that
//! the representation-theoretic layers are built on. Matrices in this
//! problem domain are tiny (at most ~10x10), so every algorithm favours
//! exactness and determinism over asymptotics.

mod charpoly;
mod hnf;
mod kernel;
mod lll;
mod matrix;
mod poly;
mod snf;
mod solve;

pub use charpoly::char_poly;
pub use hnf::{column_lattice_basis, hermite_normal_form, HermiteDecomposition};
pub use kernel::{integer_kernel, lattice_contains, solve_integer};
pub use lll::lll_reduce;
pub use matrix::{IntMatrix, LinalgError};
pub use poly::IntPoly;
pub use snf::{smith_normal_form, SmithDecomposition};
pub use solve::{
    conjugate_by_basis, inverse_unimodular, rational_to_integer_vec, solve_rational,
    solve_rational_matrix,
};
