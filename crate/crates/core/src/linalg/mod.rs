//! Self-contained dense linear algebra kernel over ℝ and ℂ.
//!
//! Everything the rest of the crate needs lives here: matrix types, rank
//! and null-space computation (column-pivoted QR), Gram–Schmidt
//! orthonormalization, a Hermitian eigensolver (cyclic Jacobi), and the
//! matrix exponential of skew-Hermitian matrices. All routines are
//! deterministic and pure; the intended problem sizes are small (n ≤ 64),
//! so clarity and accuracy win over blocked performance.

mod eigen;
mod matrix;
mod orthonormal;
mod rank;

pub use eigen::{
    expm_skew_hermitian, hermitian_eigen, hermiticity_residual, skew_hermiticity_residual,
    unitarity_residual, HermitianEigen,
};
pub use matrix::{dot_real, inner, norm2, norm2_real, ComplexMatrix, RealMatrix};
pub use orthonormal::{orthonormalize, orthonormalize_real};
pub use rank::{null_space_real, rank_real};
