use super::eigen::eigh_unchecked;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// How much of the density-matrix contract a [`HermitianMatrix`] has been
/// checked against. Levels are ordered: `Density` implies `Psd` implies
/// `Hermitian`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValidationLevel {
    Hermitian,
    Psd,
    Density,
}

/// Validation tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Asymmetry bound relative to `1 + max|A|`.
    pub hermitian: f64,
    /// Negative-eigenvalue bound relative to `max(1, spectral norm)`.
    pub psd: f64,
    /// Absolute bound on `|Tr A - 1|`.
    pub trace: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            psd: 1e-10,
            trace: 1e-10,
        }
    }
}

impl Tolerances {
    /// Lowest eigenvalue still accepted as "non-negative" for a spectrum
    /// whose largest modulus is `spectral_norm`.
    pub fn psd_floor(&self, spectral_norm: f64) -> f64 {
        -self.psd * spectral_norm.max(1.0)
    }
}

/// A square matrix checked to be Hermitian, and optionally PSD or a
/// density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    matrix: ComplexMatrix,
    level: ValidationLevel,
    tolerances: Tolerances,
}

pub fn validate_hermitian(m: &ComplexMatrix, level: ValidationLevel) -> Result<HermitianMatrix> {
    validate_hermitian_with(m, level, &Tolerances::default())
}

pub fn validate_hermitian_with(
    m: &ComplexMatrix,
    level: ValidationLevel,
    tolerances: &Tolerances,
) -> Result<HermitianMatrix> {
    m.square_dim()?;
    let bound = tolerances.hermitian * (1.0 + m.max_abs());
    let asymmetry = m.hermitian_asymmetry();
    if asymmetry > bound {
        return Err(Error::NotHermitian { asymmetry, bound });
    }
    check_level(m, level, tolerances)?;
    Ok(HermitianMatrix {
        matrix: m.clone(),
        level,
        tolerances: *tolerances,
    })
}

fn check_level(m: &ComplexMatrix, level: ValidationLevel, tolerances: &Tolerances) -> Result<()> {
    if level >= ValidationLevel::Psd {
        let eig = eigh_unchecked(m)?;
        let min = eig.eigenvalues[0];
        let norm = eig.eigenvalues.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let floor = tolerances.psd_floor(norm);
        if min < floor {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
                bound: floor,
            });
        }
    }
    if level == ValidationLevel::Density {
        let trace = m.trace().re;
        if (trace - 1.0).abs() > tolerances.trace {
            return Err(Error::NotUnitTrace { trace });
        }
    }
    Ok(())
}

impl HermitianMatrix {
    /// Wraps a matrix that is Hermitian at `level` by construction.
    pub(crate) fn assume(matrix: ComplexMatrix, level: ValidationLevel, tolerances: Tolerances) -> Self {
        Self {
            matrix,
            level,
            tolerances,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn level(&self) -> ValidationLevel {
        self.level
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    /// Real part of the trace (the imaginary part is zero up to rounding).
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Ensures the matrix satisfies `level`, running the missing checks if
    /// it was validated at a lower level.
    pub fn require(&self, level: ValidationLevel) -> Result<()> {
        if self.level >= level {
            Ok(())
        } else {
            check_level(&self.matrix, level, &self.tolerances)
        }
    }

    /// Re-validates at a stricter level.
    pub fn promote(self, level: ValidationLevel) -> Result<Self> {
        self.require(level)?;
        Ok(Self {
            level: level.max(self.level),
            ..self
        })
    }
}
