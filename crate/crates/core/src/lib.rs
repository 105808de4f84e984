//! Finite-dimensional operator systems: certification of quantum cliques and
//! anticliques, the constructions that produce them, and the search pipeline
//! that finds one or the other.
//!
//! The crate is `no_std` with `alloc`; all randomness is explicitly seeded.

#![no_std]

extern crate alloc;

pub mod constructions;
pub mod error;
pub mod instances;
pub mod linalg;
pub mod opsys;
pub mod qgraph;
pub mod ramsey;
pub mod random;
mod solve;

pub use error::{Error, Result};
pub use linalg::{CVector, ComplexMatrix, Projection, Tolerance, C64};
pub use ramsey::{diagonal_route, find_clique_or_anticlique, phase1_vector_search, SearchParams};
pub use opsys::{certify, compress_system, orbit_dim, random_system, Certificate, Kind, OperatorSystem};
pub use qgraph::{classical_ramsey_extract, general_find, generalized_certify, is_bimodule, MatrixAlgebra, QuantumGraph};
