//! Exact insertion theorems for semicontinuous functions over two computable
//! models: finite topological spaces and the one-point compactification of ℕ.

pub mod certificate;
pub mod conditions;
pub mod error;
pub mod finite_space;
pub mod gen;
pub mod insertion;
pub mod lattice;
pub mod replay;
pub mod scalar;
pub mod seq_model;

pub use error::{Error, Result};
pub use lattice::AlgElement;
pub use scalar::{q, Scalar};
