//! Portrait maps.
//!
//! With `N = n m`, a matrix is read as an `n x n` grid of `m x m` blocks
//! `a_jk`. Composite indices are left-factor major: row `r = j m + α`
//! (zero-based) sits in block row `j` at in-block row `α`, matching
//! [`ComplexMatrix::kron`].
//!
//! * `A → A₁`: the `n x n` matrix `(Tr a_jk)` ([`block_trace_map`]).
//! * `A → A₂`: the `m x m` matrix `Σ_k a_kk` ([`diagonal_block_sum`]).
//!
//! Both are trace preserving, Hermiticity preserving and linear; for a
//! tensor product `B ⊗ C` they return `B Tr C` and `C Tr B`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix, ValidationLevel, ZERO};

/// `N = n · m`: `n` blocks per side, each `m x m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockFactorization {
    n: usize,
    m: usize,
}

impl BlockFactorization {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter(format!("factorization {n}x{m} has a zero factor")));
        }
        Ok(Self { n, m })
    }

    /// Number of blocks per side (size of `A₁`).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Block size (size of `A₂`).
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n * self.m
    }

    /// All factorizations of `dim`, ordered by `n`.
    pub fn all_for(dim: usize) -> Vec<Self> {
        (1..=dim)
            .filter(|n| dim.is_multiple_of(*n))
            .map(|n| Self { n, m: dim / n })
            .collect()
    }

    /// Factorizations of `dim` with both factors at least 2.
    pub fn nontrivial_for(dim: usize) -> Vec<Self> {
        Self::all_for(dim)
            .into_iter()
            .filter(|f| f.n > 1 && f.m > 1)
            .collect()
    }

    fn check(&self, a: &ComplexMatrix) -> Result<usize> {
        let dim = a.square_dim()?;
        if dim != self.dim() {
            return Err(Error::DimensionMismatch {
                dim,
                expected: self.to_string(),
            });
        }
        Ok(dim)
    }
}

impl fmt::Display for BlockFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.n, self.m)
    }
}

/// Places an `N x N` matrix inside a `target_dim x target_dim` zero matrix
/// with its top-left corner at `(offset, offset)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingSpec {
    pub target_dim: usize,
    pub offset: usize,
}

impl EmbeddingSpec {
    pub fn new(target_dim: usize, offset: usize) -> Self {
        Self { target_dim, offset }
    }

    /// Top-left placement (`offset = 0`).
    pub fn top_left(target_dim: usize) -> Self {
        Self::new(target_dim, 0)
    }

    /// The embedding that leaves an `N x N` matrix unchanged.
    pub fn identity(dim: usize) -> Self {
        Self::new(dim, 0)
    }

    pub fn validate_for(&self, dim: usize) -> Result<()> {
        if self.offset + dim > self.target_dim {
            return Err(Error::SpecTooSmall {
                dim,
                offset: self.offset,
                target: self.target_dim,
            });
        }
        Ok(())
    }
}

/// Mixed-radix factorization `N = N₁ ⋯ N_M` and the factors to keep
/// (zero-based, ascending, deduplicated).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainFactorization {
    radices: Vec<usize>,
    keep: Vec<usize>,
}

impl ChainFactorization {
    pub fn new(radices: Vec<usize>, keep: impl IntoIterator<Item = usize>) -> Result<Self> {
        if radices.is_empty() || radices.contains(&0) {
            return Err(Error::InvalidParameter(format!("invalid radices {radices:?}")));
        }
        let mut keep: Vec<usize> = keep.into_iter().collect();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        if let Some(&index) = keep.iter().find(|&&k| k >= radices.len()) {
            return Err(Error::KeepOutOfRange {
                index,
                len: radices.len(),
            });
        }
        Ok(Self { radices, keep })
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn dim(&self) -> usize {
        self.radices.iter().product()
    }

    /// Dimension of the output: product of kept radices.
    pub fn kept_dim(&self) -> usize {
        self.keep.iter().map(|&k| self.radices[k]).product()
    }
}

/// The two portraits of a Hermitian matrix. Both maps are partial traces,
/// so they inherit the source's validation level.
#[derive(Debug, Clone, PartialEq)]
pub struct PortraitPair {
    a1: HermitianMatrix,
    a2: HermitianMatrix,
}

impl PortraitPair {
    /// Block-trace image, `n x n`.
    pub fn a1(&self) -> &HermitianMatrix {
        &self.a1
    }

    /// Diagonal-block sum, `m x m`.
    pub fn a2(&self) -> &HermitianMatrix {
        &self.a2
    }
}

/// `A → A₁`: `(A₁)_jk = Tr a_jk`.
pub fn block_trace_map(a: &ComplexMatrix, f: BlockFactorization) -> Result<ComplexMatrix> {
    f.check(a)?;
    let m = f.m;
    Ok(ComplexMatrix::from_fn(f.n, f.n, |j, k| a.sub_block(j * m, k * m, m).trace()))
}

/// `A → A₂`: `A₂ = Σ_k a_kk`.
pub fn diagonal_block_sum(a: &ComplexMatrix, f: BlockFactorization) -> Result<ComplexMatrix> {
    f.check(a)?;
    let m = f.m;
    let mut acc = ComplexMatrix::zeros(m, m);
    for k in 0..f.n {
        acc = &acc + &a.sub_block(k * m, k * m, m);
    }
    Ok(acc)
}

/// Both portraits of a general square matrix.
pub fn portrait_matrices(a: &ComplexMatrix, f: BlockFactorization) -> Result<(ComplexMatrix, ComplexMatrix)> {
    Ok((block_trace_map(a, f)?, diagonal_block_sum(a, f)?))
}

/// Both portraits of a validated Hermitian matrix.
pub fn portrait_pair(a: &HermitianMatrix, f: BlockFactorization) -> Result<PortraitPair> {
    let (a1, a2) = portrait_matrices(a.matrix(), f)?;
    Ok(PortraitPair {
        a1: HermitianMatrix::assume(a1.hermitian_part(), a.level(), *a.tolerances()),
        a2: HermitianMatrix::assume(a2.hermitian_part(), a.level(), *a.tolerances()),
    })
}

/// Zero-pads `a` into a `target_dim x target_dim` matrix at `offset`.
pub fn embed(a: &ComplexMatrix, spec: EmbeddingSpec) -> Result<ComplexMatrix> {
    let dim = a.square_dim()?;
    spec.validate_for(dim)?;
    let o = spec.offset;
    let range = o..o + dim;
    Ok(ComplexMatrix::from_fn(spec.target_dim, spec.target_dim, |r, c| {
        if range.contains(&r) && range.contains(&c) {
            a[(r - o, c - o)]
        } else {
            ZERO
        }
    }))
}

/// Embeds a validated Hermitian matrix. Zero padding keeps the spectrum
/// (plus zeros) and the trace, so the validation level carries over.
pub fn embed_hermitian(a: &HermitianMatrix, spec: EmbeddingSpec) -> Result<HermitianMatrix> {
    Ok(HermitianMatrix::assume(embed(a.matrix(), spec)?, a.level(), *a.tolerances()))
}

/// `A + x I`.
pub fn shift(a: &ComplexMatrix, x: f64) -> Result<ComplexMatrix> {
    let dim = a.square_dim()?;
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("shift {x} is not finite")));
    }
    Ok(ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            a[(r, c)] + Complex64::new(x, 0.0)
        } else {
            a[(r, c)]
        }
    }))
}

/// Shifts a Hermitian matrix; the result is Hermitian but its PSD status
/// depends on `x`, so only the Hermitian level is kept.
pub fn shift_hermitian(a: &HermitianMatrix, x: f64) -> Result<HermitianMatrix> {
    Ok(HermitianMatrix::assume(
        shift(a.matrix(), x)?,
        ValidationLevel::Hermitian,
        *a.tolerances(),
    ))
}

/// Generalized portrait over a mixed-radix index: sums `A` over the
/// discarded factors, keeping the factors listed in `c.keep()` in their
/// original order.
pub fn chain_portrait(a: &ComplexMatrix, c: &ChainFactorization) -> Result<ComplexMatrix> {
    let dim = a.square_dim()?;
    if dim != c.dim() {
        return Err(Error::DimensionMismatch {
            dim,
            expected: c
                .radices
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join("x"),
        });
    }

    // Split every composite index into (kept index, traced index).
    let m = c.radices.len();
    let mut kept = vec![false; m];
    for &k in &c.keep {
        kept[k] = true;
    }
    let split: Vec<(usize, usize)> = (0..dim)
        .map(|mut r| {
            let mut digits = vec![0; m];
            for (slot, &radix) in digits.iter_mut().zip(&c.radices).rev() {
                *slot = r % radix;
                r /= radix;
            }
            let (mut keep_idx, mut trace_idx) = (0, 0);
            for (d, (&digit, &radix)) in digits.iter().zip(&c.radices).enumerate() {
                if kept[d] {
                    keep_idx = keep_idx * radix + digit;
                } else {
                    trace_idx = trace_idx * radix + digit;
                }
            }
            (keep_idx, trace_idx)
        })
        .collect();

    let out_dim = c.kept_dim();
    let mut out = vec![ZERO; out_dim * out_dim];
    for (r, &(kr, tr)) in split.iter().enumerate() {
        for (col, &(kc, tc)) in split.iter().enumerate() {
            if tr == tc {
                out[kr * out_dim + kc] += a[(r, col)];
            }
        }
    }
    ComplexMatrix::new(out_dim, out_dim, out)
}

/// Chain portrait of a validated Hermitian matrix (a partial trace, so the
/// level carries over).
pub fn chain_portrait_hermitian(a: &HermitianMatrix, c: &ChainFactorization) -> Result<HermitianMatrix> {
    Ok(HermitianMatrix::assume(
        chain_portrait(a.matrix(), c)?.hermitian_part(),
        a.level(),
        *a.tolerances(),
    ))
}

/// `1_n ⊗ u` for an `m x m` block operator `u`.
pub fn lift_right(n: usize, u: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::identity(n).kron(u)
}

/// `u ⊗ 1_m` for an `n x n` operator `u`.
pub fn lift_left(u: &ComplexMatrix, m: usize) -> ComplexMatrix {
    u.kron(&ComplexMatrix::identity(m))
}
