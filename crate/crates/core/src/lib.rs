//! Portrait maps of block matrices and the entropic inequalities they obey.
//!
//! An `N x N` matrix with `N = n m` is read as an `n x n` array of `m x m`
//! blocks. The two portrait maps send it to the `n x n` matrix of block
//! traces and to the `m x m` sum of diagonal blocks; for density matrices of
//! composite systems these are the two partial traces, but the maps apply
//! to any square matrix whose size factors. Matrices whose size does not
//! factor are zero-padded first ([`portrait::embed`]), and indefinite
//! Hermitian matrices are shifted by a multiple of the identity
//! ([`portrait::shift`]) before the entropy checks in [`entropy`].

pub mod entropy;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod portrait;
pub mod randgen;

pub use num_complex::Complex64;

pub use entropy::{InequalityReport, MutualInformationResult};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Eigendecomposition, HermitianMatrix, Tolerances, ValidationLevel};
pub use portrait::{BlockFactorization, ChainFactorization, EmbeddingSpec, PortraitPair};
pub use randgen::SeededGenerator;
