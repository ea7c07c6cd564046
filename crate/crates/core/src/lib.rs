//! Exact computations for noncommutative Hodge-to-de Rham questions on
//! finite-dimensional algebras: Hochschild and negative cyclic homology,
//! Hodge-type filtrations, Chern characters of idempotents and polynomial
//! Poisson bivectors.
//!
//! Everything is generic over [`Scalar`]; [`Q`] and the prime fields
//! [`F2`] through [`F13`] are the concrete instances.

pub mod algebra;
pub mod cyclic;
pub mod error;
pub mod exactlin;
pub mod hochschild;
pub mod kchern;
pub mod poisson;
pub mod scalar;

pub use error::{NcgError, Result};
pub use scalar::{FieldDescriptor, Fp, Scalar, F11, F13, F2, F3, F5, F7, Q};
