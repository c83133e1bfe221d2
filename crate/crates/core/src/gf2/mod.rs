//! Exact linear algebra over GF(2) and cochain-complex cohomology.
//!
//! Dense matrices use packed 64-bit rows; large sparse coboundary matrices
//! go through [`SparseMatrix`], whose rank routine switches individual rows
//! to packed form once they fill in. Pivoting is always "first nonzero in
//! row order", so kernel bases are reproducible.

mod bitvec;
mod complex;
mod dense;
mod echelon;
mod reduction;
mod sparse;

pub use bitvec::BitVec;
pub use complex::GF2ChainComplex;
pub use dense::{GF2Matrix, Rref};
pub use echelon::{EchelonBasis, QuotientBasis};
pub use reduction::{CohomologyBasis, ColumnReduction};
pub use sparse::SparseMatrix;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("d∘d ≠ 0 starting in degree {degree}")]
    NotAComplex { degree: usize },
    #[error("duplicate basis label {label:?} in degree {degree}")]
    DuplicateLabel { degree: usize, label: String },
    #[error("matrix parse error: {0}")]
    Parse(String),
}
