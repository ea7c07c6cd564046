//! Exact sparse linear algebra over ℚ and 𝔽_p, and module decomposition of
//! finite complexes over `k[u]/u^N`.

mod echelon;
mod sparse;
mod umodule;

pub use echelon::{column_space, kernel_basis, rank, Echelon};
pub use sparse::{SparseMatrix, SparseVec};
pub use umodule::{FreeUComplex, GradedUComplex, UModuleReport, UString, UTruncation};

use crate::error::Result;
use crate::scalar::Scalar;

/// Decomposes the homology of a free complex over `k[u]/u^N` at every position.
pub fn u_module_decompose<F: Scalar>(complex: &FreeUComplex<F>) -> Result<Vec<UModuleReport>> {
    complex.decompose()
}
