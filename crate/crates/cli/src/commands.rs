use std::collections::BTreeMap;
use std::f64::consts::LN_2;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use portrait_core::entropy::{
    check_padded_subadditivity, check_scaled, check_shifted, check_ssa_analog, check_subadditivity, minimal_shift,
    mutual_information_via_embedding, mutual_matrix_information, terms,
};
use portrait_core::linalg::{validate_hermitian, ValidationLevel};
use portrait_core::oracle::{oracle_chain_portrait, oracle_entropy, oracle_portrait};
use portrait_core::portrait::{embed, embed_hermitian, portrait_matrices, shift};
use portrait_core::randgen::{
    haar_unitary, random_hermitian, random_mixed_density, random_pure_density, random_separable,
};
use portrait_core::{ComplexMatrix, InequalityReport, SeededGenerator};

use crate::args::{BatchArgs, CheckArgs, GenArgs, GenKind, InequalityKind, MutinfoArgs, OracleArgs, PortraitArgs};
use crate::batch::{chain_radices, default_radices, run_batch, BatchParams, BatchSummary};
use crate::error::CliError;
use crate::format::{format_matrix, number, read_matrix, to_json, write_text, MutualInformationFile, ReportFile};

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Satisfied,
    Violated,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Satisfied => 0,
            Outcome::Violated => 1,
        }
    }

    fn from_flag(satisfied: bool) -> Self {
        if satisfied {
            Outcome::Satisfied
        } else {
            Outcome::Violated
        }
    }
}

type CmdResult = Result<Outcome, CliError>;

fn io(e: std::io::Error) -> CliError {
    CliError::input(format!("write failed: {e}"))
}

// ---------------------------------------------------------------------------
// oracle cross-checks

fn oracle_s(m: &ComplexMatrix) -> Result<f64, CliError> {
    Ok(oracle_entropy(&validate_hermitian(m, ValidationLevel::Hermitian)?)?)
}

fn compare(what: &str, main: f64, oracle: f64, tolerance: f64) -> Result<(), CliError> {
    // Written so that a NaN on either side counts as a disagreement.
    if (main - oracle).abs() <= tolerance {
        Ok(())
    } else {
        Err(CliError::OracleMismatch {
            what: what.to_owned(),
            main,
            oracle,
            tolerance,
        })
    }
}

fn compare_matrices(what: &str, main: &ComplexMatrix, oracle: &ComplexMatrix, tolerance: f64) -> Result<(), CliError> {
    compare(what, 0.0, main.max_abs_diff(oracle), tolerance)
}

fn compare_terms(report: &BTreeMap<String, f64>, oracle: &[(&str, f64)], tolerance: f64) -> Result<(), CliError> {
    for &(label, value) in oracle {
        let main = report
            .get(label)
            .copied()
            .ok_or_else(|| CliError::input(format!("report has no term {label}")))?;
        compare(label, main, value, tolerance)?;
    }
    Ok(())
}

/// Joint and portrait entropies of `a` from the reference implementations.
fn oracle_pair_terms(a: &ComplexMatrix, f: portrait_core::BlockFactorization) -> Result<[(&'static str, f64); 3], CliError> {
    let (a1, a2) = oracle_portrait(a, f)?;
    Ok([
        (terms::ENTROPY_JOINT, oracle_s(a)?),
        (terms::ENTROPY_PART1, oracle_s(&a1)?),
        (terms::ENTROPY_PART2, oracle_s(&a2)?),
    ])
}

// ---------------------------------------------------------------------------
// human-readable output

/// Terms that are not entropies and keep their value under `--bits`.
const PLAIN_TERMS: [&str; 2] = [terms::TRACE, terms::SHIFT];

fn unit(bits: bool) -> (&'static str, f64) {
    if bits {
        ("bits", 1.0 / LN_2)
    } else {
        ("nats", 1.0)
    }
}

pub fn render_report(report: &InequalityReport, bits: bool) -> String {
    let (unit, k) = unit(bits);
    let verdict = if report.satisfied { "satisfied" } else { "VIOLATED" };
    let mut s = format!("{}: {verdict}\n", report.name);
    let _ = writeln!(s, "  {:<20}{}", "lhs", number(report.lhs * k));
    let _ = writeln!(s, "  {:<20}{}", "rhs", number(report.rhs * k));
    let _ = writeln!(s, "  {:<20}{}", "slack", number(report.slack * k));
    let _ = writeln!(s, "  {:<20}{}", "tolerance", number(report.tolerance * k));
    for (label, value) in &report.terms {
        let scale = if PLAIN_TERMS.contains(&label.as_str()) { 1.0 } else { k };
        let _ = writeln!(s, "  {:<20}{}", label, number(value * scale));
    }
    let _ = writeln!(s, "  {:<20}{unit}", "unit");
    s
}

fn render_batch(summary: &BatchSummary) -> String {
    let verdict = if summary.satisfied { "satisfied" } else { "VIOLATED" };
    let mut s = format!(
        "{}: {verdict} ({} violations, {} trials per dimension, seed {}, stream {})\n",
        summary.inequality, summary.violations, summary.trials, summary.seed, summary.stream
    );
    let _ = writeln!(
        s,
        "  {:>5}  {:<8} {:>7} {:>10}  {:<24} mean_slack",
        "dim", "split", "trials", "violations", "min_slack"
    );
    for g in &summary.groups {
        let _ = writeln!(
            s,
            "  {:>5}  {:<8} {:>7} {:>10}  {:<24} {}",
            g.dim,
            g.factorization,
            g.trials,
            g.violations,
            number(g.min_slack),
            number(g.mean_slack)
        );
    }
    s
}

// ---------------------------------------------------------------------------
// commands

fn prefixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

pub fn portrait(args: &PortraitArgs, out: &mut dyn Write) -> CmdResult {
    let input = read_matrix(&args.input)?;
    let dim = input.matrix.rows();
    let spec = args.embed.spec(dim);
    let matrix = embed(&input.matrix, spec)?;
    let f = args.factor.resolve(matrix.rows())?;
    let (a1, a2) = portrait_matrices(&matrix, f)?;

    if args.oracle.verify_oracle {
        let (o1, o2) = oracle_portrait(&matrix, f)?;
        compare_matrices("a1", &a1, &o1, args.oracle.oracle_tol)?;
        compare_matrices("a2", &a2, &o2, args.oracle.oracle_tol)?;
    }

    match &args.out {
        Some(prefix) => {
            let (p1, p2) = (prefixed(prefix, ".a1.json"), prefixed(prefix, ".a2.json"));
            write_text(&p1, &format_matrix(&a1))?;
            write_text(&p2, &format_matrix(&a2))?;
            writeln!(out, "a1 ({0}x{0}) -> {1}", a1.rows(), p1.display()).map_err(io)?;
            writeln!(out, "a2 ({0}x{0}) -> {1}", a2.rows(), p2.display()).map_err(io)?;
        }
        None => {
            write!(out, "# a1\n{}# a2\n{}", format_matrix(&a1), format_matrix(&a2)).map_err(io)?;
        }
    }
    Ok(Outcome::Satisfied)
}

fn check_report(args: &CheckArgs, matrix: &ComplexMatrix, oracle: &OracleArgs) -> Result<InequalityReport, CliError> {
    let dim = matrix.rows();
    let tol = args.tol;
    if !tol.is_finite() {
        return Err(CliError::input("--tol must be finite"));
    }
    let verify = |report: &InequalityReport, terms: &[(&str, f64)]| {
        compare_terms(&report.terms, terms, oracle.oracle_tol)
    };

    match args.kind {
        InequalityKind::Subadd => {
            let rho = validate_hermitian(matrix, ValidationLevel::Density)?;
            match args.embed.pad_to {
                None => {
                    let f = args.factor.resolve(dim)?;
                    let report = check_subadditivity(&rho, f, tol)?;
                    if oracle.verify_oracle {
                        verify(&report, &oracle_pair_terms(matrix, f)?)?;
                    }
                    Ok(report)
                }
                Some(_) => {
                    let spec = args.embed.spec(dim);
                    let f = args.factor.resolve(spec.target_dim)?;
                    let report = check_padded_subadditivity(&rho, spec, f, tol)?;
                    if oracle.verify_oracle {
                        let padded = embed(matrix, spec)?;
                        let [(_, s_padded), p1, p2] = oracle_pair_terms(&padded, f)?;
                        verify(
                            &report,
                            &[(terms::ENTROPY_JOINT, oracle_s(matrix)?), (terms::ENTROPY_EMBEDDED, s_padded), p1, p2],
                        )?;
                    }
                    Ok(report)
                }
            }
        }
        InequalityKind::Scaled => {
            let a = validate_hermitian(matrix, ValidationLevel::Psd)?;
            let a = embed_hermitian(&a, args.embed.spec(dim))?;
            let f = args.factor.resolve(a.dim())?;
            let report = check_scaled(&a, f, tol)?;
            if oracle.verify_oracle {
                verify(&report, &oracle_pair_terms(a.matrix(), f)?)?;
            }
            Ok(report)
        }
        InequalityKind::Shifted => {
            let a = validate_hermitian(matrix, ValidationLevel::Hermitian)?;
            let spec = args.embed.spec(dim);
            let f = args.factor.resolve(spec.target_dim)?;
            let x = match args.x {
                Some(x) => x,
                None => minimal_shift(&a, spec)?,
            };
            let report = check_shifted(&a, spec, f, x, tol)?;
            if oracle.verify_oracle {
                let shifted = shift(&embed(matrix, spec)?, x)?;
                verify(&report, &oracle_pair_terms(&shifted, f)?)?;
            }
            Ok(report)
        }
        InequalityKind::Ssa => {
            if args.embed.pad_to.is_some() {
                return Err(CliError::input("--pad-to is not supported with --kind ssa"));
            }
            let rho = validate_hermitian(matrix, ValidationLevel::Density)?;
            let radices = match &args.radices {
                Some(r) => chain_radices(r, dim)?,
                None => default_radices(dim),
            };
            let report = check_ssa_analog(&rho, radices, tol)?;
            if oracle.verify_oracle {
                let reduce = |keep: &[usize]| -> Result<f64, CliError> {
                    oracle_s(&oracle_chain_portrait(matrix, &radices, keep)?)
                };
                verify(
                    &report,
                    &[
                        (terms::ENTROPY_JOINT, oracle_s(matrix)?),
                        (terms::ENTROPY_MIDDLE, reduce(&[1])?),
                        (terms::ENTROPY_LEFT_PAIR, reduce(&[0, 1])?),
                        (terms::ENTROPY_RIGHT_PAIR, reduce(&[1, 2])?),
                    ],
                )?;
            }
            Ok(report)
        }
    }
}

pub fn check(args: &CheckArgs, out: &mut dyn Write) -> CmdResult {
    let input = read_matrix(&args.input)?;
    let report = check_report(args, &input.matrix, &args.oracle)?;
    if let Some(path) = &args.out {
        write_text(path, &to_json(&ReportFile::new(&report, &input.digest)))?;
    }
    out.write_all(render_report(&report, args.bits).as_bytes()).map_err(io)?;
    Ok(Outcome::from_flag(report.satisfied))
}

pub fn mutinfo(args: &MutinfoArgs, out: &mut dyn Write) -> CmdResult {
    let input = read_matrix(&args.input)?;
    let rho = validate_hermitian(&input.matrix, ValidationLevel::Density)
        .map_err(|e| portrait_core::Error::NotDensity(Box::new(e)))?;
    let f = args.factor.resolve(rho.dim())?;
    let direct = mutual_matrix_information(&rho, f)?;
    let padded = mutual_information_via_embedding(&rho, f)?;
    let terms = BTreeMap::from([
        (terms::ENTROPY_JOINT.to_owned(), direct.entropy_joint),
        (terms::ENTROPY_PART1.to_owned(), direct.entropy_part1),
        (terms::ENTROPY_PART2.to_owned(), direct.entropy_part2),
    ]);

    if args.oracle.verify_oracle {
        let oracle = oracle_pair_terms(rho.matrix(), f)?;
        compare_terms(&terms, &oracle, args.oracle.oracle_tol)?;
        let value = oracle[1].1 + oracle[2].1 - oracle[0].1;
        compare("mutual_information", direct.value, value, args.oracle.oracle_tol)?;
    }

    let file = MutualInformationFile {
        quantity: "mutual_information".into(),
        value: direct.value,
        value_via_embedding: padded.value,
        terms,
        input_digest: input.digest,
    };
    if let Some(path) = &args.out {
        write_text(path, &to_json(&file))?;
    }

    let (unit, k) = unit(args.bits);
    let mut s = format!("mutual_information: {}\n", number(file.value * k));
    let _ = writeln!(s, "  {:<20}{}", "via_embedding", number(file.value_via_embedding * k));
    for (label, value) in &file.terms {
        let _ = writeln!(s, "  {:<20}{}", label, number(value * k));
    }
    let _ = writeln!(s, "  {:<20}{unit}", "unit");
    out.write_all(s.as_bytes()).map_err(io)?;
    Ok(Outcome::Satisfied)
}

pub fn generate(args: &GenArgs) -> Result<ComplexMatrix, CliError> {
    let mut gen = SeededGenerator::new(args.seed.seed, args.seed.stream);
    let dim = || args.dim.ok_or_else(|| CliError::input("--dim is required for this kind"));
    let matrix = match args.kind {
        GenKind::Pure => random_pure_density(&mut gen, dim()?)?.into_matrix(),
        GenKind::Mixed => random_mixed_density(&mut gen, dim()?)?.into_matrix(),
        GenKind::Hermitian => random_hermitian(&mut gen, dim()?, args.scale)?.into_matrix(),
        GenKind::Unitary => haar_unitary(&mut gen, dim()?)?,
        GenKind::Separable => {
            let f = match (args.dim, args.factor.n, args.factor.m) {
                (Some(d), _, _) => args.factor.resolve(d)?,
                (None, Some(n), Some(m)) => args.factor.resolve(n * m)?,
                _ => return Err(CliError::input("separable needs --n and --m (or --dim with one of them)")),
            };
            random_separable(&mut gen, f, args.terms)?.into_matrix()
        }
    };
    Ok(matrix)
}

pub fn gen(args: &GenArgs, out: &mut dyn Write) -> CmdResult {
    let text = format_matrix(&generate(args)?);
    match &args.out {
        Some(path) => write_text(path, &text)?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(Outcome::Satisfied)
}

pub fn batch(args: &BatchArgs, out: &mut dyn Write) -> CmdResult {
    let summary = run_batch(&BatchParams {
        kind: args.kind,
        dims: args.dims.clone(),
        trials: args.trials,
        seed: args.seed.seed,
        stream: args.seed.stream,
        tolerance: args.tol,
        radices: args.radices.clone(),
    })?;
    if let Some(path) = &args.report {
        write_text(path, &to_json(&summary))?;
    }
    out.write_all(render_batch(&summary).as_bytes()).map_err(io)?;
    Ok(Outcome::from_flag(summary.satisfied))
}
