//! Cyclic Jacobi eigensolver for complex Hermitian matrices, plus the
//! spectral functional calculus built on it.

use num_complex::Complex64;

use super::hermitian::HermitianMatrix;
use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Stopping rule for the Jacobi sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiConfig {
    /// Converged once the off-diagonal Frobenius norm is at most
    /// `relative_tolerance * ‖A‖_F`.
    pub relative_tolerance: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiConfig {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-14,
            max_sweeps: 100,
        }
    }
}

/// `A = V Λ V†` with eigenvalues ascending and eigenvectors as columns of `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigendecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Eigendecomposition {
    /// `V f(Λ) V†`, assembled on the upper triangle and mirrored so the
    /// result is exactly Hermitian.
    pub fn reconstruct_with(&self, values: &[f64]) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut data = vec![ZERO; n * n];
        for r in 0..n {
            for c in r..n {
                let mut acc = ZERO;
                for (k, &w) in values.iter().enumerate() {
                    if w != 0.0 {
                        acc += v[(r, k)] * v[(c, k)].conj() * w;
                    }
                }
                if r == c {
                    acc.im = 0.0;
                }
                data[r * n + c] = acc;
                data[c * n + r] = acc.conj();
            }
        }
        ComplexMatrix::from_raw(n, n, data)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(&self.eigenvalues)
    }
}

pub fn eigh(a: &HermitianMatrix) -> Result<Eigendecomposition> {
    eigh_with(a, &JacobiConfig::default())
}

pub fn eigh_with(a: &HermitianMatrix, config: &JacobiConfig) -> Result<Eigendecomposition> {
    jacobi(a.matrix(), config)
}

/// Eigendecomposition of a matrix the caller already knows to be Hermitian
/// (for example a portrait of a validated matrix).
pub(crate) fn eigh_unchecked(a: &ComplexMatrix) -> Result<Eigendecomposition> {
    jacobi(a, &JacobiConfig::default())
}

/// Smallest eigenvalue.
pub fn min_eigenvalue(a: &HermitianMatrix) -> Result<f64> {
    Ok(eigh(a)?.eigenvalues[0])
}

/// `V f(Λ) V†`; fails with [`Error::Domain`] if `f` is not finite at some
/// eigenvalue.
pub fn spectral_apply(a: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let eig = eigh(a)?;
    let mut values = Vec::with_capacity(eig.eigenvalues.len());
    for &lambda in &eig.eigenvalues {
        let y = f(lambda);
        if !y.is_finite() {
            return Err(Error::Domain { eigenvalue: lambda });
        }
        values.push(y);
    }
    Ok(eig.reconstruct_with(&values))
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[r * n + c].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(input: &ComplexMatrix, config: &JacobiConfig) -> Result<Eigendecomposition> {
    let n = input.square_dim()?;
    // Work on the exact Hermitian part so both triangles agree.
    let mut a = input.hermitian_part().into_raw();
    let mut v = ComplexMatrix::identity(n).into_raw();

    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = config.relative_tolerance * scale;

    let mut converged = off_diagonal_norm(&a, n) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == config.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps: config.max_sweeps,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a, n) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));

    let eigenvalues = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = vec![ZERO; n * n];
    for (dst, &src) in order.iter().enumerate() {
        // First non-negligible component made real positive.
        let pivot = (0..n)
            .map(|r| v[r * n + src])
            .find(|z| z.norm() > 1e-10)
            .unwrap_or(Complex64::new(1.0, 0.0));
        let phase = pivot.conj() / pivot.norm();
        for r in 0..n {
            vectors[r * n + dst] = v[r * n + src] * phase;
        }
    }

    Ok(Eigendecomposition {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_raw(n, n, vectors),
    })
}

/// Annihilates `a[p][q]` with the unitary `J = [[c, s e], [-s ē, c]]` acting
/// on rows/columns `p, q`, where `e` is the phase of `a[p][q]`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let g = a[p * n + q];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let e = g / g_abs;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;

    let theta = (aqq - app) / (2.0 * g_abs);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    } else {
        0.0
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let se = e * s;
    let se_conj = se.conj();

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = akp * c - se_conj * akq;
        let new_kq = se * akp + akq * c;
        a[k * n + p] = new_kp;
        a[k * n + q] = new_kq;
        a[p * n + k] = new_kp.conj();
        a[q * n + k] = new_kq.conj();
    }
    a[p * n + p] = Complex64::new(app - t * g_abs, 0.0);
    a[q * n + q] = Complex64::new(aqq + t * g_abs, 0.0);
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * c - se_conj * vkq;
        v[k * n + q] = se * vkp + vkq * c;
    }
}
