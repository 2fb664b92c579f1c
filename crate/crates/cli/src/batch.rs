//! Seeded ensemble sweeps.
//!
//! Trial `i` at dimension `d` draws from `root.substream(d).substream(i)`,
//! so results do not depend on how trials are scheduled across threads.
//! Aggregation happens afterwards in trial order.

use portrait_core::entropy::{check_scaled, check_shifted, check_ssa_analog, check_subadditivity, minimal_shift};
use portrait_core::linalg::{validate_hermitian, ValidationLevel};
use portrait_core::randgen::{random_hermitian, random_mixed_density};
use portrait_core::{BlockFactorization, EmbeddingSpec, SeededGenerator};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::InequalityKind;
use crate::error::CliError;

/// Offsets added to the minimal shift, cycled by trial index.
pub const SHIFT_MARGINS: [f64; 3] = [0.0, 0.1, 1.0];

#[derive(Debug, Clone)]
pub struct BatchParams {
    pub kind: InequalityKind,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub stream: u64,
    pub tolerance: f64,
    pub radices: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub dim: usize,
    pub factorization: String,
    pub trials: usize,
    pub violations: usize,
    pub min_slack: f64,
    pub mean_slack: f64,
    pub worst_trial: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub inequality: String,
    pub seed: u64,
    pub stream: u64,
    pub trials: usize,
    pub tolerance: f64,
    pub groups: Vec<GroupSummary>,
    pub violations: usize,
    pub satisfied: bool,
}

#[derive(Debug, Clone)]
enum Target {
    Pair(BlockFactorization),
    Chain([usize; 3]),
}

impl Target {
    fn label(&self) -> String {
        match self {
            Target::Pair(f) => f.to_string(),
            Target::Chain([a, b, c]) => format!("{a}x{b}x{c}"),
        }
    }
}

pub fn inequality_name(kind: InequalityKind) -> &'static str {
    match kind {
        InequalityKind::Subadd => "subadditivity",
        InequalityKind::Scaled => "scaled_subadditivity",
        InequalityKind::Shifted => "shifted_subadditivity",
        InequalityKind::Ssa => "strong_subadditivity_analog",
    }
}

fn smallest_factor(d: usize) -> usize {
    (2..=d).find(|p| d.is_multiple_of(*p)).unwrap_or(1)
}

/// `[p, q, rest]` from the two smallest prime factors; 1s fill in when
/// `dim` has fewer factors.
pub fn default_radices(dim: usize) -> [usize; 3] {
    let a = smallest_factor(dim);
    let b = smallest_factor(dim / a);
    [a, b, dim / a / b]
}

pub fn chain_radices(radices: &[usize], dim: usize) -> Result<[usize; 3], CliError> {
    let r: [usize; 3] = radices
        .try_into()
        .map_err(|_| CliError::input(format!("need exactly three radices, got {}", radices.len())))?;
    if r.iter().product::<usize>() != dim {
        return Err(CliError::input(format!("radices {r:?} do not multiply to {dim}")));
    }
    Ok(r)
}

fn targets(params: &BatchParams, dim: usize) -> Result<Vec<Target>, CliError> {
    if dim == 0 {
        return Err(CliError::input("dimensions must be positive"));
    }
    Ok(match params.kind {
        InequalityKind::Ssa => {
            let r = match &params.radices {
                Some(r) => chain_radices(r, dim)?,
                None => default_radices(dim),
            };
            vec![Target::Chain(r)]
        }
        _ => {
            let mut fs = BlockFactorization::nontrivial_for(dim);
            if fs.is_empty() {
                fs = BlockFactorization::all_for(dim);
            }
            fs.into_iter().map(Target::Pair).collect()
        }
    })
}

fn run_trial(
    params: &BatchParams,
    dim: usize,
    targets: &[Target],
    trial: usize,
    gen: &mut SeededGenerator,
) -> Result<Vec<f64>, CliError> {
    let tol = params.tolerance;
    let pair = |t: &Target| match t {
        Target::Pair(f) => *f,
        Target::Chain(_) => unreachable!("chain target for a two-factor inequality"),
    };
    let slacks = match params.kind {
        InequalityKind::Subadd => {
            let rho = random_mixed_density(gen, dim)?;
            targets
                .iter()
                .map(|t| check_subadditivity(&rho, pair(t), tol).map(|r| r.slack))
                .collect::<Result<Vec<_>, _>>()?
        }
        InequalityKind::Scaled => {
            let rho = random_mixed_density(gen, dim)?;
            let mu = 0.1 + 9.9 * gen.uniform();
            let a = validate_hermitian(&rho.matrix().scale_real(mu), ValidationLevel::Psd)?;
            targets
                .iter()
                .map(|t| check_scaled(&a, pair(t), tol).map(|r| r.slack))
                .collect::<Result<Vec<_>, _>>()?
        }
        InequalityKind::Shifted => {
            let a = random_hermitian(gen, dim, 1.0)?;
            let spec = EmbeddingSpec::identity(dim);
            let x = minimal_shift(&a, spec)? + SHIFT_MARGINS[trial % SHIFT_MARGINS.len()];
            targets
                .iter()
                .map(|t| check_shifted(&a, spec, pair(t), x, tol).map(|r| r.slack))
                .collect::<Result<Vec<_>, _>>()?
        }
        InequalityKind::Ssa => {
            let rho = random_mixed_density(gen, dim)?;
            targets
                .iter()
                .map(|t| match t {
                    Target::Chain(r) => check_ssa_analog(&rho, *r, tol).map(|r| r.slack),
                    Target::Pair(_) => unreachable!("pair target for the chain inequality"),
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(slacks)
}

pub fn run_batch(params: &BatchParams) -> Result<BatchSummary, CliError> {
    if !params.tolerance.is_finite() {
        return Err(CliError::input("tolerance must be finite"));
    }
    let root = SeededGenerator::new(params.seed, params.stream);
    let mut groups = Vec::new();

    for &dim in &params.dims {
        let targets = targets(params, dim)?;
        if params.trials == 0 {
            continue;
        }
        let per_dim = root.substream(dim as u64);
        let slacks: Vec<Vec<f64>> = (0..params.trials)
            .into_par_iter()
            .map(|trial| run_trial(params, dim, &targets, trial, &mut per_dim.substream(trial as u64)))
            .collect::<Result<_, _>>()?;

        for (k, target) in targets.iter().enumerate() {
            let mut min_slack = f64::INFINITY;
            let mut worst_trial = 0;
            let mut sum = 0.0;
            let mut violations = 0;
            for (trial, s) in slacks.iter().map(|row| row[k]).enumerate() {
                if s < min_slack {
                    min_slack = s;
                    worst_trial = trial;
                }
                if s < -params.tolerance {
                    violations += 1;
                }
                sum += s;
            }
            groups.push(GroupSummary {
                dim,
                factorization: target.label(),
                trials: params.trials,
                violations,
                min_slack,
                mean_slack: sum / params.trials as f64,
                worst_trial,
            });
        }
    }

    let violations = groups.iter().map(|g| g.violations).sum();
    Ok(BatchSummary {
        inequality: inequality_name(params.kind).to_owned(),
        seed: params.seed,
        stream: params.stream,
        trials: params.trials,
        tolerance: params.tolerance,
        groups,
        violations,
        satisfied: violations == 0,
    })
}
