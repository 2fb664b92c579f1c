//! Dense complex matrices, Hermitian validation and eigendecomposition.

mod eigen;
mod hermitian;
mod matrix;

pub use eigen::{eigh, eigh_with, min_eigenvalue, spectral_apply, Eigendecomposition, JacobiConfig};
pub(crate) use eigen::eigh_unchecked;
pub use hermitian::{validate_hermitian, validate_hermitian_with, HermitianMatrix, Tolerances, ValidationLevel};
pub use matrix::{kron, ComplexMatrix, ONE, ZERO};
