//! Exact-arithmetic engine for classifying Bieberbach groups (fundamental
//! groups of compact flat manifolds) with cyclic holonomy.
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals; there are no floating-point code paths. The crate is
//! `no_std`-compatible (it requires `alloc`); all IO, serialization and the
//! command-line surface live in the companion `flatcat` crate.
//!
//! The pipeline, bottom to top:
//!
//! * [`exact_linalg`] — integer matrices, Smith/Hermite normal forms,
//!   saturated kernels, exact linear solvers, characteristic polynomials.
//! * [`cyclotomic`] — cyclotomic polynomials, Euler's function, companion
//!   matrices, and the irreducible rational representations of cyclic groups.
//! * [`qclass`] — rational equivalence classes of representations and the
//!   admissible holonomy orders per dimension.
//! * [`zclass`] — integral representation classes via sublattice centerings,
//!   with a structure-theoretic cross-oracle for prime orders.
//! * [`cohomology`] — Tate cohomology of cyclic groups with lattice
//!   coefficients, the special-class test, and explicit group extensions.
//! * [`classify`] — reduction of special classes to isomorphism classes of
//!   Bieberbach groups under integral symmetries.
//! * [`catalog`] — end-to-end pipeline, the naming scheme, and verification
//!   reports.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod classify;
pub mod cohomology;
pub mod cyclotomic;
pub mod exact_linalg;
mod homs;
pub mod qclass;
pub mod zclass;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use catalog::{classify_all, name_entry, verify, Catalog, CatalogEntry, GroupName};
pub use classify::{
    isomorphic_groups, orbit_reduce, symmetry_generators, Exactness, IsoVerdict, SymmetryElement,
};
pub use cohomology::{BieberbachGroupDesc, CohomologyGroup};
pub use exact_linalg::{IntMatrix, SmithDecomposition};
pub use qclass::{admissible_orders, enumerate_qclasses, QClassDecomposition};
pub use zclass::{LatticeRep, SearchBudget};
