//! Slow reference implementations used to cross-check the main code paths.
//!
//! Nothing here calls into `linalg` or `portrait` beyond reading matrix
//! entries: portraits are raw index sums, and entropies come from a
//! separate eigenvalue route (real symmetric doubling, Householder
//! tridiagonalization, Sturm-sequence bisection) with compensated summation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::portrait::BlockFactorization;

/// Both portraits by explicit summation over composite indices
/// `r = j m + α`.
pub fn oracle_portrait(a: &ComplexMatrix, f: BlockFactorization) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let (n, m) = (f.n(), f.m());
    if a.rows() != a.cols() || a.rows() != n * m {
        return Err(Error::DimensionMismatch {
            dim: a.rows(),
            expected: f.to_string(),
        });
    }
    let zero = Complex64::new(0.0, 0.0);

    let mut a1 = vec![zero; n * n];
    for j in 0..n {
        for k in 0..n {
            let mut sum = zero;
            for alpha in 0..m {
                sum += a[(j * m + alpha, k * m + alpha)];
            }
            a1[j * n + k] = sum;
        }
    }

    let mut a2 = vec![zero; m * m];
    for alpha in 0..m {
        for beta in 0..m {
            let mut sum = zero;
            for k in 0..n {
                sum += a[(k * m + alpha, k * m + beta)];
            }
            a2[alpha * m + beta] = sum;
        }
    }

    Ok((ComplexMatrix::new(n, n, a1)?, ComplexMatrix::new(m, m, a2)?))
}

/// Reduction of `A` over a mixed-radix chain `N = N₁ N₂ ⋯`, keeping the
/// factors listed in `keep` (zero-based, ascending): every pair of composite
/// indices is decoded into digits, and entries whose traced digits agree are
/// accumulated.
pub fn oracle_chain_portrait(a: &ComplexMatrix, radices: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let dim: usize = radices.iter().product();
    if a.rows() != dim || a.cols() != dim {
        return Err(Error::DimensionMismatch {
            dim: a.rows(),
            expected: format!("{radices:?}"),
        });
    }
    if keep.is_empty() {
        return Err(Error::EmptyKeep);
    }
    if let Some(&index) = keep.iter().find(|&&k| k >= radices.len()) {
        return Err(Error::KeepOutOfRange {
            index,
            len: radices.len(),
        });
    }
    let digits = |mut r: usize| {
        let mut out = vec![0; radices.len()];
        for (slot, &d) in out.iter_mut().zip(radices).rev() {
            *slot = r % d;
            r /= d;
        }
        out
    };
    let position = |d: &[usize]| keep.iter().fold(0, |acc, &k| acc * radices[k] + d[k]);
    let kept_dim: usize = keep.iter().map(|&k| radices[k]).product();

    let mut out = vec![Complex64::new(0.0, 0.0); kept_dim * kept_dim];
    for r in 0..dim {
        let dr = digits(r);
        for c in 0..dim {
            let dc = digits(c);
            let traced_agree = (0..radices.len()).filter(|k| !keep.contains(k)).all(|k| dr[k] == dc[k]);
            if traced_agree {
                out[position(&dr) * kept_dim + position(&dc)] += a[(r, c)];
            }
        }
    }
    ComplexMatrix::new(kept_dim, kept_dim, out)
}

/// `-Tr A ln A` via the independent eigenvalue route.
pub fn oracle_entropy(a: &HermitianMatrix) -> Result<f64> {
    let eigenvalues = oracle_eigenvalues(a.matrix())?;
    let norm = eigenvalues.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let floor = -a.tolerances().psd * norm.max(1.0);
    let mut sum = NeumaierSum::default();
    for &lambda in &eigenvalues {
        if lambda < floor {
            return Err(Error::NotPsd {
                min_eigenvalue: lambda,
                bound: floor,
            });
        }
        if lambda > 0.0 {
            sum.add(-lambda * lambda.ln());
        }
    }
    // Every eigenvalue appears twice in the doubled real matrix.
    Ok(sum.total() / 2.0)
}

/// Eigenvalues (ascending, each repeated twice) of the real symmetric
/// `2N x 2N` matrix `[[X, -Y], [Y, X]]` for `A = X + iY`.
pub fn oracle_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::NotSquare {
            rows: n,
            cols: a.cols(),
        });
    }
    let size = 2 * n;
    let mut s = vec![vec![0.0f64; size]; size];
    for r in 0..n {
        for c in 0..n {
            // Symmetrize while copying.
            let z = (a[(r, c)] + a[(c, r)].conj()) * 0.5;
            s[r][c] = z.re;
            s[r + n][c + n] = z.re;
            s[r][c + n] = -z.im;
            s[r + n][c] = z.im;
        }
    }
    let (diag, off) = tridiagonalize(s);
    bisect_all(&diag, &off)
}

fn tridiagonalize(mut s: Vec<Vec<f64>>) -> (Vec<f64>, Vec<f64>) {
    let size = s.len();
    for k in 0..size.saturating_sub(2) {
        let x_norm = (k + 1..size).map(|i| s[i][k] * s[i][k]).sum::<f64>().sqrt();
        if x_norm == 0.0 {
            continue;
        }
        let alpha = if s[k + 1][k] > 0.0 { -x_norm } else { x_norm };
        let mut v = vec![0.0; size];
        for i in k + 1..size {
            v[i] = s[i][k];
        }
        v[k + 1] -= alpha;
        let v_norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if v_norm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= v_norm);

        // S ← H S H with H = I - 2 v vᵀ, written as S - 2 v wᵀ - 2 w vᵀ.
        let p: Vec<f64> = (0..size).map(|i| (0..size).map(|j| s[i][j] * v[j]).sum()).collect();
        let vp: f64 = v.iter().zip(&p).map(|(a, b)| a * b).sum();
        let w: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - vp * vi).collect();
        for i in 0..size {
            for j in 0..size {
                s[i][j] -= 2.0 * (v[i] * w[j] + w[i] * v[j]);
            }
        }
    }
    let diag = (0..size).map(|i| s[i][i]).collect();
    let off = (0..size.saturating_sub(1)).map(|i| 0.5 * (s[i + 1][i] + s[i][i + 1])).collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] / q };
        q = diag[i] - x - coupling;
        if q == 0.0 {
            q = -f64::EPSILON * (x.abs() + 1.0) * 1e-3;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn bisect_all(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    const MAX_STEPS: usize = 200;
    let size = diag.len();
    let radius = |i: usize| {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < size { off[i].abs() } else { 0.0 };
        left + right
    };
    let lower = (0..size).map(|i| diag[i] - radius(i)).fold(f64::INFINITY, f64::min);
    let upper = (0..size).map(|i| diag[i] + radius(i)).fold(f64::NEG_INFINITY, f64::max);
    let scale = lower.abs().max(upper.abs());
    let pad = 1e-12 * (scale + 1.0);
    let floor = 1e-3 * f64::EPSILON * scale + f64::MIN_POSITIVE;

    let mut out = Vec::with_capacity(size);
    for k in 0..size {
        let (mut lo, mut hi) = (lower - pad, upper + pad);
        let mut steps = 0;
        while hi - lo > 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + floor {
            if steps == MAX_STEPS {
                return Err(Error::NoConvergence { sweeps: MAX_STEPS });
            }
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if sturm_count(diag, off, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            steps += 1;
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

#[derive(Default)]
struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}
