//! Seeded random matrices.
//!
//! Every draw comes from a ChaCha20 stream selected by `(seed, stream_id)`.
//! Gaussians use the Box–Muller transform evaluated with `libm`, so the
//! sequences are bit-for-bit reproducible across platforms.

use num_complex::Complex64;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::linalg::{validate_hermitian, ComplexMatrix, HermitianMatrix, ValidationLevel, ZERO};
use crate::portrait::BlockFactorization;

#[derive(Clone, Debug)]
pub struct SeededGenerator {
    seed: u64,
    stream_id: u64,
    rng: ChaCha20Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl SeededGenerator {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Independent generator for sub-task `index` (a worker, a trial),
    /// derived from this generator's identity rather than its position.
    pub fn substream(&self, index: u64) -> Self {
        Self::new(self.seed, splitmix64(self.stream_id ^ splitmix64(index)))
    }

    /// Uniform in `(0, 1]` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard complex Gaussian: real and imaginary parts independent
    /// `N(0, 1/2)`, so `E|z|² = 1`.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let radius = libm::sqrt(-libm::log(u1));
        let angle = 2.0 * std::f64::consts::PI * u2;
        Complex64::new(radius * libm::cos(angle), radius * libm::sin(angle))
    }

    /// Exponential(1) variate.
    pub fn exponential(&mut self) -> f64 {
        -libm::log(self.uniform())
    }

    /// `rows x cols` matrix of independent complex Gaussians.
    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex_gaussian())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::InvalidParameter("dimension must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Haar-distributed unitary: Gram–Schmidt (two passes) on the columns of a
/// Ginibre matrix. The implied `R` has a positive real diagonal, which is
/// the phase correction that makes the distribution Haar.
pub fn haar_unitary(gen: &mut SeededGenerator, dim: usize) -> Result<ComplexMatrix> {
    check_dim(dim)?;
    let g = gen.ginibre(dim, dim);
    let mut columns: Vec<Vec<Complex64>> = (0..dim).map(|c| (0..dim).map(|r| g[(r, c)]).collect()).collect();
    for k in 0..dim {
        for _ in 0..2 {
            for j in 0..k {
                let proj = dot(&columns[j], &columns[k]);
                let (done, rest) = columns.split_at_mut(k);
                for (x, q) in rest[0].iter_mut().zip(&done[j]) {
                    *x -= proj * q;
                }
            }
        }
        let len = norm(&columns[k]);
        columns[k].iter_mut().for_each(|x| *x /= len);
    }
    Ok(ComplexMatrix::from_fn(dim, dim, |r, c| columns[c][r]))
}

/// Rank-one projector `ψψ†` for a uniformly random unit vector `ψ`.
pub fn random_pure_density(gen: &mut SeededGenerator, dim: usize) -> Result<HermitianMatrix> {
    check_dim(dim)?;
    let mut psi: Vec<Complex64> = (0..dim).map(|_| gen.complex_gaussian()).collect();
    let len = norm(&psi);
    psi.iter_mut().for_each(|x| *x /= len);
    validate_hermitian(&ComplexMatrix::outer(&psi, &psi), ValidationLevel::Density)
}

/// `G G† / Tr(G G†)` for a square Ginibre `G` (Hilbert–Schmidt measure).
pub fn random_mixed_density(gen: &mut SeededGenerator, dim: usize) -> Result<HermitianMatrix> {
    check_dim(dim)?;
    let g = gen.ginibre(dim, dim);
    let mut gg = vec![ZERO; dim * dim];
    for r in 0..dim {
        for c in r..dim {
            let z = dot(g.row(c), g.row(r));
            gg[r * dim + c] = z;
            gg[c * dim + r] = z.conj();
        }
        gg[r * dim + r].im = 0.0;
    }
    let trace: f64 = (0..dim).map(|i| gg[i * dim + i].re).sum();
    let rho = ComplexMatrix::new(dim, dim, gg.into_iter().map(|z| z / trace).collect())?;
    validate_hermitian(&rho, ValidationLevel::Density)
}

/// `scale · (G + G†) / 2`: an indefinite Hermitian matrix in general.
pub fn random_hermitian(gen: &mut SeededGenerator, dim: usize, scale: f64) -> Result<HermitianMatrix> {
    check_dim(dim)?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidParameter(format!("scale must be positive, got {scale}")));
    }
    let g = gen.ginibre(dim, dim);
    validate_hermitian(&g.hermitian_part().scale_real(scale), ValidationLevel::Hermitian)
}

/// Separable density `Σ_k p_k B_k ⊗ C_k` with Dirichlet(1, …, 1) weights
/// and Hilbert–Schmidt factors of sizes `f.n()` and `f.m()`.
pub fn random_separable(gen: &mut SeededGenerator, f: BlockFactorization, terms: usize) -> Result<HermitianMatrix> {
    if terms == 0 {
        return Err(Error::InvalidParameter("need at least one term".into()));
    }
    let weights: Vec<f64> = (0..terms).map(|_| gen.exponential()).collect();
    let total: f64 = weights.iter().sum();
    let dim = f.dim();
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for w in weights {
        let b = random_mixed_density(gen, f.n())?;
        let c = random_mixed_density(gen, f.m())?;
        acc = &acc + &b.matrix().kron(c.matrix()).scale_real(w / total);
    }
    validate_hermitian(&acc, ValidationLevel::Density)
}
