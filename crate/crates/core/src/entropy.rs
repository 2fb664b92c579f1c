//! Von Neumann entropy, mutual matrix information and the entropic
//! inequality checks.
//!
//! All entropies are in nats. Eigenvalues in the clamp band
//! `[-τ_psd · max(1, ‖A‖), 0)` are treated as zero and `0 ln 0 = 0`;
//! anything below the band is rejected as not PSD.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{eigh, eigh_unchecked, HermitianMatrix, Tolerances, ValidationLevel};
use crate::portrait::{
    chain_portrait_hermitian, embed, embed_hermitian, portrait_pair, shift_hermitian, BlockFactorization,
    ChainFactorization, EmbeddingSpec,
};

/// Default absolute tolerance on the slack of an inequality.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Term labels used in [`InequalityReport::terms`].
pub mod terms {
    pub const ENTROPY_JOINT: &str = "entropy_joint";
    pub const ENTROPY_EMBEDDED: &str = "entropy_embedded";
    pub const ENTROPY_PART1: &str = "entropy_part1";
    pub const ENTROPY_PART2: &str = "entropy_part2";
    pub const TRACE: &str = "trace";
    pub const TRACE_LN_TRACE: &str = "trace_ln_trace";
    pub const SHIFT: &str = "shift";
    pub const SHIFTED_LHS: &str = "shifted_lhs";
    pub const SHIFTED_RHS: &str = "shifted_rhs";
    pub const ENTROPY_MIDDLE: &str = "entropy_middle";
    pub const ENTROPY_LEFT_PAIR: &str = "entropy_left_pair";
    pub const ENTROPY_RIGHT_PAIR: &str = "entropy_right_pair";
}

/// Outcome of checking `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    pub tolerance: f64,
    /// `slack >= -tolerance`.
    pub satisfied: bool,
    pub terms: BTreeMap<String, f64>,
}

impl InequalityReport {
    pub fn new(name: &str, lhs: f64, rhs: f64, tolerance: f64, terms: BTreeMap<String, f64>) -> Self {
        let slack = rhs - lhs;
        Self {
            name: name.to_owned(),
            lhs,
            rhs,
            slack,
            tolerance,
            satisfied: slack >= -tolerance,
            terms,
        }
    }

    pub fn term(&self, label: &str) -> Option<f64> {
        self.terms.get(label).copied()
    }
}

/// `I = S(A₁) + S(A₂) - S(A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualInformationResult {
    pub value: f64,
    pub entropy_joint: f64,
    pub entropy_part1: f64,
    pub entropy_part2: f64,
}

impl MutualInformationResult {
    fn from_entropies(entropy_joint: f64, entropy_part1: f64, entropy_part2: f64) -> Self {
        Self {
            value: entropy_part1 + entropy_part2 - entropy_joint,
            entropy_joint,
            entropy_part1,
            entropy_part2,
        }
    }
}

/// Clamps a spectrum into the PSD cone, rejecting eigenvalues below the band.
fn clamp_spectrum(eigenvalues: &[f64], tolerances: &Tolerances) -> Result<Vec<f64>> {
    let norm = eigenvalues.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let floor = tolerances.psd_floor(norm);
    eigenvalues
        .iter()
        .map(|&lambda| {
            if lambda >= 0.0 {
                Ok(lambda)
            } else if lambda >= floor {
                Ok(0.0)
            } else {
                Err(Error::NotPsd {
                    min_eigenvalue: lambda,
                    bound: floor,
                })
            }
        })
        .collect()
}

fn x_ln_x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `-Σ λ ln λ` over a clamped spectrum.
pub fn entropy_of_spectrum(eigenvalues: &[f64], tolerances: &Tolerances) -> Result<f64> {
    // `0.0 - sum` rather than `-sum`: a pure state reports 0, not -0.
    Ok(0.0 - clamp_spectrum(eigenvalues, tolerances)?.into_iter().map(x_ln_x).sum::<f64>())
}

/// `S(A) = -Tr A ln A` for a PSD matrix of any positive trace.
pub fn von_neumann_entropy(a: &HermitianMatrix) -> Result<f64> {
    entropy_of_spectrum(&eigh(a)?.eigenvalues, a.tolerances())
}

/// `Tr (A ln A)` through the functional calculus: builds `A ln A` as a
/// matrix and takes its trace.
fn trace_a_ln_a(a: &HermitianMatrix) -> Result<f64> {
    let eig = eigh_unchecked(a.matrix())?;
    let clamped = clamp_spectrum(&eig.eigenvalues, a.tolerances())?;
    let values: Vec<f64> = clamped.into_iter().map(x_ln_x).collect();
    Ok(eig.reconstruct_with(&values).trace().re)
}

fn require_density(a: &HermitianMatrix) -> Result<()> {
    a.require(ValidationLevel::Density)
        .map_err(|e| Error::NotDensity(Box::new(e)))
}

/// Mutual matrix information from the two portraits.
pub fn mutual_matrix_information(a: &HermitianMatrix, f: BlockFactorization) -> Result<MutualInformationResult> {
    require_density(a)?;
    let pair = portrait_pair(a, f)?;
    Ok(MutualInformationResult::from_entropies(
        von_neumann_entropy(a)?,
        von_neumann_entropy(pair.a1())?,
        von_neumann_entropy(pair.a2())?,
    ))
}

/// Mutual matrix information as `Tr(A ln A - Ã₁ ln Ã₁ - Ã₂ ln Ã₂)` with
/// both portraits zero-padded back to `N x N`.
pub fn mutual_information_via_embedding(
    a: &HermitianMatrix,
    f: BlockFactorization,
) -> Result<MutualInformationResult> {
    require_density(a)?;
    let dim = a.dim();
    let pair = portrait_pair(a, f)?;
    let padded1 = embed_hermitian(pair.a1(), EmbeddingSpec::top_left(dim))?;
    let padded2 = embed_hermitian(pair.a2(), EmbeddingSpec::top_left(dim))?;
    Ok(MutualInformationResult::from_entropies(
        -trace_a_ln_a(a)?,
        -trace_a_ln_a(&padded1)?,
        -trace_a_ln_a(&padded2)?,
    ))
}

/// `S(A) ≤ S(A₁) + S(A₂)` for a density matrix.
pub fn check_subadditivity(a: &HermitianMatrix, f: BlockFactorization, tol: f64) -> Result<InequalityReport> {
    require_density(a)?;
    let pair = portrait_pair(a, f)?;
    let s = von_neumann_entropy(a)?;
    let s1 = von_neumann_entropy(pair.a1())?;
    let s2 = von_neumann_entropy(pair.a2())?;
    let terms = BTreeMap::from([
        (terms::ENTROPY_JOINT.to_owned(), s),
        (terms::ENTROPY_PART1.to_owned(), s1),
        (terms::ENTROPY_PART2.to_owned(), s2),
    ]);
    Ok(InequalityReport::new("subadditivity", s, s1 + s2, tol, terms))
}

/// Subadditivity for a density matrix zero-padded to `spec.target_dim`,
/// which must equal `f.dim()`.
pub fn check_padded_subadditivity(
    a: &HermitianMatrix,
    spec: EmbeddingSpec,
    f: BlockFactorization,
    tol: f64,
) -> Result<InequalityReport> {
    require_density(a)?;
    let padded = embed_hermitian(a, spec)?;
    let pair = portrait_pair(&padded, f)?;
    let s = von_neumann_entropy(a)?;
    let s_padded = von_neumann_entropy(&padded)?;
    let s1 = von_neumann_entropy(pair.a1())?;
    let s2 = von_neumann_entropy(pair.a2())?;
    let terms = BTreeMap::from([
        (terms::ENTROPY_JOINT.to_owned(), s),
        (terms::ENTROPY_EMBEDDED.to_owned(), s_padded),
        (terms::ENTROPY_PART1.to_owned(), s1),
        (terms::ENTROPY_PART2.to_owned(), s2),
    ]);
    Ok(InequalityReport::new("padded_subadditivity", s, s1 + s2, tol, terms))
}

/// `S(A) ≤ S(A₁) + S(A₂) + μ ln μ` for PSD `A` with `μ = Tr A > 0`.
pub fn check_scaled(a: &HermitianMatrix, f: BlockFactorization, tol: f64) -> Result<InequalityReport> {
    a.require(ValidationLevel::Psd)?;
    let mu = a.trace();
    if mu <= 0.0 {
        return Err(Error::ZeroTrace { trace: mu });
    }
    let pair = portrait_pair(a, f)?;
    let s = von_neumann_entropy(a)?;
    let s1 = von_neumann_entropy(pair.a1())?;
    let s2 = von_neumann_entropy(pair.a2())?;
    let mu_ln_mu = x_ln_x(mu);
    let terms = BTreeMap::from([
        (terms::ENTROPY_JOINT.to_owned(), s),
        (terms::ENTROPY_PART1.to_owned(), s1),
        (terms::ENTROPY_PART2.to_owned(), s2),
        (terms::TRACE.to_owned(), mu),
        (terms::TRACE_LN_TRACE.to_owned(), mu_ln_mu),
    ]);
    Ok(InequalityReport::new("scaled_subadditivity", s, s1 + s2 + mu_ln_mu, tol, terms))
}

/// Shifted inequality for an arbitrary Hermitian `A`: with `Ã` the
/// embedding and `A′ = Ã + x 1`,
/// `-Tr A′ ln A′ ≤ -Tr A′₁ ln A′₁ - Tr A′₂ ln A′₂ + (Tr A′) ln (Tr A′)`.
///
/// The report's `lhs`/`rhs` use that arrangement. The equivalent form with
/// `(Tr A′) ln (Tr A′)` moved to the left is recorded under
/// [`terms::SHIFTED_LHS`] and [`terms::SHIFTED_RHS`].
pub fn check_shifted(
    a: &HermitianMatrix,
    spec: EmbeddingSpec,
    f: BlockFactorization,
    x: f64,
    tol: f64,
) -> Result<InequalityReport> {
    let embedded = embed(a.matrix(), spec)?;
    let shifted = shift_hermitian(
        &HermitianMatrix::assume(embedded, ValidationLevel::Hermitian, *a.tolerances()),
        x,
    )?;
    let eig = eigh(&shifted)?;
    let s = entropy_of_spectrum(&eig.eigenvalues, a.tolerances()).map_err(|e| match e {
        Error::NotPsd { min_eigenvalue, .. } => Error::ShiftTooSmall { shift: x, min_eigenvalue },
        other => other,
    })?;
    // The spectrum just passed the clamp check.
    let shifted = HermitianMatrix::assume(shifted.into_matrix(), ValidationLevel::Psd, *a.tolerances());
    let mu = shifted.trace();
    if mu <= 0.0 {
        return Err(Error::ZeroTrace { trace: mu });
    }

    let pair = portrait_pair(&shifted, f)?;
    let s1 = von_neumann_entropy(pair.a1())?;
    let s2 = von_neumann_entropy(pair.a2())?;
    let mu_ln_mu = x_ln_x(mu);
    let terms = BTreeMap::from([
        (terms::ENTROPY_JOINT.to_owned(), s),
        (terms::ENTROPY_PART1.to_owned(), s1),
        (terms::ENTROPY_PART2.to_owned(), s2),
        (terms::SHIFT.to_owned(), x),
        (terms::TRACE.to_owned(), mu),
        (terms::TRACE_LN_TRACE.to_owned(), mu_ln_mu),
        (terms::SHIFTED_LHS.to_owned(), s - mu_ln_mu),
        (terms::SHIFTED_RHS.to_owned(), s1 + s2),
    ]);
    Ok(InequalityReport::new("shifted_subadditivity", s, s1 + s2 + mu_ln_mu, tol, terms))
}

/// Tripartite analog of strong subadditivity over a three-factor chain
/// `N = n₁ n₂ n₃`: `S(A) + S(A₂) ≤ S(A₁₂) + S(A₂₃)`, where the subscripts
/// name the kept factors.
pub fn check_ssa_analog(a: &HermitianMatrix, radices: [usize; 3], tol: f64) -> Result<InequalityReport> {
    require_density(a)?;
    let radices = radices.to_vec();
    let middle = chain_portrait_hermitian(a, &ChainFactorization::new(radices.clone(), [1])?)?;
    let left = chain_portrait_hermitian(a, &ChainFactorization::new(radices.clone(), [0, 1])?)?;
    let right = chain_portrait_hermitian(a, &ChainFactorization::new(radices, [1, 2])?)?;
    let s = von_neumann_entropy(a)?;
    let s_mid = von_neumann_entropy(&middle)?;
    let s_left = von_neumann_entropy(&left)?;
    let s_right = von_neumann_entropy(&right)?;
    let terms = BTreeMap::from([
        (terms::ENTROPY_JOINT.to_owned(), s),
        (terms::ENTROPY_MIDDLE.to_owned(), s_mid),
        (terms::ENTROPY_LEFT_PAIR.to_owned(), s_left),
        (terms::ENTROPY_RIGHT_PAIR.to_owned(), s_right),
    ]);
    Ok(InequalityReport::new(
        "strong_subadditivity_analog",
        s + s_mid,
        s_left + s_right,
        tol,
        terms,
    ))
}

/// Shift that makes `A` PSD: `|λ_min|` of the embedded matrix.
pub fn minimal_shift(a: &HermitianMatrix, spec: EmbeddingSpec) -> Result<f64> {
    let embedded = embed(a.matrix(), spec)?;
    Ok(eigh_unchecked(&embedded)?.eigenvalues[0].abs())
}
