//! Exact verification of descent-theoretic isomorphisms for ring extensions
//! of finite-dimensional algebras over prime fields.
//!
//! The crate builds the Sweedler coring `S (x)_B S` of an extension
//! `i: B -> S`, the comatrix coring `M* (x)_B M` of a bimodule, enumerates
//! their coring endomorphisms, and compares them with the monoid of
//! `B`-subbimodules of `S` through the maps `I -> Gamma(I)` and
//! `g -> J(g)`.

pub mod algebra;
pub mod bimodule;
pub mod builtin;
pub mod comonadicity;
pub mod coring;
pub mod descent;
pub mod error;
pub mod extension;
pub mod field;
pub mod fuzz;
pub mod instance;
pub mod matrix;
pub mod monoid;
pub mod projective;
pub mod report;
pub mod subspace;
pub mod tensor;

pub use algebra::{validate_algebra, AlgebraMorphism, FiniteAlgebra};
pub use bimodule::{Bimodule, BimoduleMap};
pub use coring::{
    build_comatrix, build_sweedler, comparison_functor, coring_endomorphisms, equalizer_rs, twist_comodule,
    Comodule, Coring, CoringMorphism,
};
pub use error::{Error, Result};
pub use extension::Extension;
pub use field::PrimeField;
pub use fuzz::{fuzz, FuzzConfig, FuzzReport};
pub use instance::{parse_instance, InstanceSpec};
pub use matrix::{solve_linear, AffineSolution, Matrix};
pub use monoid::MonoidTable;
pub use report::{run_suite, run_suite_with, RunOptions, Status, Suite, VerificationReport};
pub use projective::{dual_basis, end_algebra, DualBasis, EndAlgebra, Side};
pub use subspace::Subspace;
pub use tensor::{tensor_over, TensorSpace};
