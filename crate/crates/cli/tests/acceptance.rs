//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use portrait_cli::args::InequalityKind;
use portrait_cli::batch::{run_batch, BatchParams};
use portrait_core::entropy::{
    check_scaled, check_shifted, check_ssa_analog, check_subadditivity, minimal_shift, mutual_information_via_embedding,
    mutual_matrix_information, terms, von_neumann_entropy, DEFAULT_TOLERANCE,
};
use portrait_core::linalg::{eigh, min_eigenvalue, validate_hermitian, ValidationLevel};
use portrait_core::oracle::{oracle_entropy, oracle_portrait};
use portrait_core::portrait::{
    block_trace_map, diagonal_block_sum, embed, lift_left, lift_right, portrait_matrices, portrait_pair, shift,
};
use portrait_core::randgen::{haar_unitary, random_hermitian, random_mixed_density, random_pure_density};
use portrait_core::{
    BlockFactorization, Complex64, ComplexMatrix, EmbeddingSpec, HermitianMatrix, SeededGenerator,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn density(m: &ComplexMatrix) -> Result<HermitianMatrix, String> {
    validate_hermitian(m, ValidationLevel::Density).map_err(e)
}

// ---------------------------------------------------------------------------
// 1

fn subadditivity_sweep() -> Outcome {
    let start = Instant::now();
    let summary = run_batch(&BatchParams {
        kind: InequalityKind::Subadd,
        dims: vec![4, 6, 9, 12],
        trials: 1000,
        seed: 20_240_601,
        stream: 0,
        tolerance: DEFAULT_TOLERANCE,
        radices: None,
    })
    .map_err(e)?;
    let elapsed = start.elapsed();

    for label in ["2x2", "2x3", "3x2", "3x3", "3x4"] {
        ensure(summary.groups.iter().any(|g| g.factorization == label), || format!("no {label} group"))?;
    }
    let worst = summary.groups.iter().map(|g| g.min_slack).fold(f64::INFINITY, f64::min);
    ensure(summary.violations == 0 && worst >= -1e-9, || {
        format!("{} violations, min slack {worst:e}", summary.violations)
    })?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} groups x 1000 trials, min slack {worst:.3e}, {:.2}s",
        summary.groups.len(),
        elapsed.as_secs_f64()
    ))
}

// ---------------------------------------------------------------------------
// 2

/// Coefficient of each `ρ_pq` (zero-based) and of the shift in one entry.
#[derive(Debug, Clone, Default, PartialEq)]
struct Entry {
    rho: BTreeMap<(usize, usize), f64>,
    x: f64,
}

/// `"11+22+2x | 13 ; ..."`: rows by `;`, entries by `|`, one-based labels.
fn table(src: &str) -> Vec<Vec<Entry>> {
    src.split(';')
        .map(|row| {
            row.split('|')
                .map(|cell| {
                    let mut entry = Entry::default();
                    for term in cell.split('+').map(str::trim).filter(|t| *t != "0") {
                        if let Some(k) = term.strip_suffix('x') {
                            entry.x += if k.is_empty() { 1.0 } else { k.parse::<f64>().unwrap() };
                        } else {
                            let d: Vec<usize> = term.bytes().map(|b| (b - b'0') as usize).collect();
                            *entry.rho.entry((d[0] - 1, d[1] - 1)).or_default() += 1.0;
                        }
                    }
                    entry
                })
                .collect()
        })
        .collect()
}

fn derive(dim: usize, spec: EmbeddingSpec, shifted: bool, map: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Vec<Vec<Entry>> {
    let zero = ComplexMatrix::zeros(dim, dim);
    let size = map(&embed(&zero, spec).unwrap()).rows();
    let mut out = vec![vec![Entry::default(); size]; size];
    for p in 0..dim {
        for q in 0..dim {
            let image = map(&embed(&ComplexMatrix::matrix_unit(dim, p, q), spec).unwrap());
            for r in 0..size {
                for c in 0..size {
                    let z = image[(r, c)];
                    if z != Complex64::new(0.0, 0.0) {
                        assert_eq!(z.im, 0.0);
                        out[r][c].rho.insert((p, q), z.re);
                    }
                }
            }
        }
    }
    if shifted {
        let image = map(&shift(&embed(&zero, spec).unwrap(), 1.0).unwrap());
        for r in 0..size {
            for c in 0..size {
                out[r][c].x = image[(r, c)].re;
            }
        }
    }
    out
}

fn structural_pins() -> Outcome {
    let f = |n, m| BlockFactorization::new(n, m).unwrap();
    let a1 = |n, m| move |a: &ComplexMatrix| block_trace_map(a, f(n, m)).unwrap();
    let a2 = |n, m| move |a: &ComplexMatrix| diagonal_block_sum(a, f(n, m)).unwrap();
    let full = EmbeddingSpec::identity(4);
    let centered = EmbeddingSpec::new(6, 1);
    let padded = EmbeddingSpec::top_left(4);

    let cases: Vec<(&str, &str, Vec<Vec<Entry>>)> = vec![
        ("N=4 A1", "11+22 | 13+24 ; 31+42 | 33+44", derive(4, full, false, a1(2, 2))),
        ("N=4 A2", "11+33 | 12+34 ; 21+43 | 22+44", derive(4, full, false, a2(2, 2))),
        ("4->6 3x2 A2", "44+22 | 23 ; 32 | 33+11", derive(4, centered, false, a2(3, 2))),
        ("4->6 3x2 A1", "11 | 13 | 0 ; 31 | 22+33 | 24 ; 0 | 42 | 44", derive(4, centered, false, a1(3, 2))),
        ("4->6 2x3 A1", "11+22 | 14 ; 41 | 33+44", derive(4, centered, false, a1(2, 3))),
        ("4->6 2x3 A2", "33 | 34 | 0 ; 43 | 11+44 | 12 ; 0 | 21 | 22", derive(4, centered, false, a2(2, 3))),
        (
            "3->4 shifted",
            "11+x | 12 | 13 | 0 ; 21 | 22+x | 23 | 0 ; 31 | 32 | 33+x | 0 ; 0 | 0 | 0 | x",
            derive(3, padded, true, |a| a.clone()),
        ),
        ("3->4 A1", "11+22+2x | 13 ; 31 | 33+2x", derive(3, padded, true, a1(2, 2))),
        ("3->4 A2", "11+33+2x | 12 ; 21 | 22+2x", derive(3, padded, true, a2(2, 2))),
        (
            "3->4 trace",
            "11+22+33+4x",
            derive(3, padded, true, |a| ComplexMatrix::from_fn(1, 1, |_, _| a.trace())),
        ),
    ];

    let mut entries = 0;
    let mut mismatches = Vec::new();
    for (name, expected, derived) in &cases {
        let expected = table(expected);
        if expected.len() != derived.len() || expected.iter().zip(derived).any(|(a, b)| a.len() != b.len()) {
            mismatches.push(format!("{name}: shape"));
            continue;
        }
        for (r, (er, dr)) in expected.iter().zip(derived).enumerate() {
            for (c, (x, y)) in er.iter().zip(dr).enumerate() {
                entries += 1;
                if x != y {
                    mismatches.push(format!("{name} ({}, {})", r + 1, c + 1));
                }
            }
        }
    }
    ensure(mismatches.is_empty(), || format!("{} mismatches: {}", mismatches.len(), mismatches.join(", ")))?;
    Ok(format!("{} matrices, {entries} entries, 0 placement mismatches", cases.len()))
}

// ---------------------------------------------------------------------------
// 3

fn schmidt_property() -> Outcome {
    let root = SeededGenerator::new(3, 0);
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for dim in [4, 6, 9, 12] {
        let mut gen = root.substream(dim as u64);
        for _ in 0..100 {
            let psi = random_pure_density(&mut gen, dim).map_err(e)?;
            for f in BlockFactorization::all_for(dim) {
                let pair = portrait_pair(&psi, f).map_err(e)?;
                let mut s1 = eigh(pair.a1()).map_err(e)?.eigenvalues;
                let mut s2 = eigh(pair.a2()).map_err(e)?.eigenvalues;
                s1.reverse();
                s2.reverse();
                // The Schmidt rank is at most min(n, m): beyond that both
                // spectra must vanish, below it they must coincide.
                let k = f.n().min(f.m());
                let shared = s1.iter().zip(&s2).take(k).map(|(a, b)| (a - b).abs());
                let tail = s1.iter().skip(k).chain(s2.iter().skip(k)).map(|x| x.abs());
                let gap = shared.chain(tail).fold(0.0, f64::max);
                worst = worst.max(gap);
                checks += 1;
                ensure(gap <= 1e-9, || format!("dim {dim} {f}: spectra differ by {gap:e}"))?;
            }
        }
    }
    Ok(format!("{checks} reductions, max spectral gap {worst:.2e}"))
}

// ---------------------------------------------------------------------------
// 4

fn unitary_invariance() -> Outcome {
    let root = SeededGenerator::new(4, 0);
    let mut worst: f64 = 0.0;
    for dim in [4, 6, 12] {
        let mut gen = root.substream(dim as u64);
        for _ in 0..100 {
            let a = random_mixed_density(&mut gen, dim).map_err(e)?.into_matrix();
            for f in BlockFactorization::nontrivial_for(dim) {
                let u = lift_right(f.n(), &haar_unitary(&mut gen, f.m()).map_err(e)?);
                let rotated = &(&u * &a) * &u.adjoint();
                let d1 = (&block_trace_map(&rotated, f).map_err(e)? - &block_trace_map(&a, f).map_err(e)?).frobenius_norm();

                let v = lift_left(&haar_unitary(&mut gen, f.n()).map_err(e)?, f.m());
                let rotated = &(&v * &a) * &v.adjoint();
                let d2 =
                    (&diagonal_block_sum(&rotated, f).map_err(e)? - &diagonal_block_sum(&a, f).map_err(e)?).frobenius_norm();

                worst = worst.max(d1).max(d2);
                ensure(d1 <= 1e-10 && d2 <= 1e-10, || format!("dim {dim} {f}: {d1:e}, {d2:e}"))?;
            }
        }
    }
    Ok(format!("300 inputs, max deviation {worst:.2e}"))
}

// ---------------------------------------------------------------------------
// 5

fn maximally_entangled(d: usize, gen: &mut SeededGenerator) -> Result<HermitianMatrix, String> {
    // (u ⊗ 1)|Φ⟩ with |Φ⟩ = Σ|ii⟩/√d, a random local rotation of the
    // standard maximally entangled state.
    let u = haar_unitary(gen, d).map_err(e)?;
    let amp = 1.0 / (d as f64).sqrt();
    let psi: Vec<Complex64> = (0..d * d).map(|r| u[(r / d, r % d)] * amp).collect();
    density(&ComplexMatrix::outer(&psi, &psi).hermitian_part())
}

fn mutual_information() -> Outcome {
    let mut gen = SeededGenerator::new(5, 0);
    let mut min_i = f64::INFINITY;

    let mut product_worst: f64 = 0.0;
    for (n, m) in [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4)] {
        let f = BlockFactorization::new(n, m).map_err(e)?;
        for _ in 0..20 {
            let b = random_mixed_density(&mut gen, n).map_err(e)?;
            let c = random_mixed_density(&mut gen, m).map_err(e)?;
            let rho = density(&b.matrix().kron(c.matrix()))?;
            let i = mutual_matrix_information(&rho, f).map_err(e)?.value;
            product_worst = product_worst.max(i.abs());
            min_i = min_i.min(i);
        }
    }
    ensure(product_worst <= 1e-10, || format!("product state with I = {product_worst:e}"))?;

    let mut entangled_worst: f64 = 0.0;
    for d in [2, 3] {
        let f = BlockFactorization::new(d, d).map_err(e)?;
        for _ in 0..10 {
            let rho = maximally_entangled(d, &mut gen)?;
            let i = mutual_matrix_information(&rho, f).map_err(e)?.value;
            let gap = (i - 2.0 * (d as f64).ln()).abs();
            entangled_worst = entangled_worst.max(gap);
            min_i = min_i.min(i);
        }
    }
    ensure(entangled_worst <= 1e-9, || format!("maximally entangled off by {entangled_worst:e}"))?;

    let mut route_worst: f64 = 0.0;
    for trial in 0..200 {
        let dim = [4, 6, 8, 9, 12][trial % 5];
        let rho = random_mixed_density(&mut gen, dim).map_err(e)?;
        for f in BlockFactorization::nontrivial_for(dim) {
            let a = mutual_matrix_information(&rho, f).map_err(e)?.value;
            let b = mutual_information_via_embedding(&rho, f).map_err(e)?.value;
            route_worst = route_worst.max((a - b).abs());
            min_i = min_i.min(a).min(b);
        }
    }
    ensure(route_worst <= 1e-10, || format!("routes differ by {route_worst:e}"))?;
    ensure(min_i >= -1e-9, || format!("negative mutual information {min_i:e}"))?;
    Ok(format!(
        "product |I| <= {product_worst:.1e}, entangled err {entangled_worst:.1e}, route diff {route_worst:.1e}, min I {min_i:.2e}"
    ))
}

// ---------------------------------------------------------------------------
// 6

fn scaled_inequality() -> Outcome {
    let mut gen = SeededGenerator::new(6, 0);
    let mut worst = f64::INFINITY;
    let mut unit_trace_gap: f64 = 0.0;
    for trial in 0..200 {
        let dim = [4, 6, 9][trial % 3];
        let rho = random_mixed_density(&mut gen, dim).map_err(e)?;
        let mu = 0.1 + 9.9 * gen.uniform();
        let a = validate_hermitian(&rho.matrix().scale_real(mu), ValidationLevel::Psd).map_err(e)?;
        for f in BlockFactorization::nontrivial_for(dim) {
            let report = check_scaled(&a, f, DEFAULT_TOLERANCE).map_err(e)?;
            worst = worst.min(report.slack);
            ensure(report.slack >= -1e-9, || format!("trial {trial} {f}: slack {:e}", report.slack))?;

            let at_one = check_scaled(&rho, f, DEFAULT_TOLERANCE).map_err(e)?;
            let plain = check_subadditivity(&rho, f, DEFAULT_TOLERANCE).map_err(e)?;
            let mut gap = (at_one.lhs - plain.lhs).abs().max((at_one.rhs - plain.rhs).abs());
            for (label, value) in &plain.terms {
                gap = gap.max((at_one.terms[label] - value).abs());
            }
            unit_trace_gap = unit_trace_gap.max(gap);
        }
    }
    ensure(unit_trace_gap <= 1e-12, || format!("unit-trace report differs by {unit_trace_gap:e}"))?;
    Ok(format!("200 inputs, min slack {worst:.3e}, unit-trace term diff {unit_trace_gap:.1e}"))
}

// ---------------------------------------------------------------------------
// 7

fn shifted_inequality() -> Outcome {
    let mut gen = SeededGenerator::new(7, 0);
    let mut worst = f64::INFINITY;
    let mut reports = 0;
    for trial in 0..200 {
        let dim = [3, 4][trial % 2];
        let a = loop {
            let a = random_hermitian(&mut gen, dim, 1.0).map_err(e)?;
            let eig = eigh(&a).map_err(e)?.eigenvalues;
            if eig[0] < 0.0 && eig[dim - 1] > 0.0 {
                break a;
            }
        };
        let specs = match dim {
            3 => [EmbeddingSpec::top_left(4), EmbeddingSpec::new(6, 1)],
            _ => [EmbeddingSpec::identity(4), EmbeddingSpec::new(6, 1)],
        };
        for spec in specs {
            let base = minimal_shift(&a, spec).map_err(e)?;
            for margin in [0.0, 0.1, 1.0] {
                for f in BlockFactorization::nontrivial_for(spec.target_dim) {
                    let report = check_shifted(&a, spec, f, base + margin, DEFAULT_TOLERANCE).map_err(e)?;
                    worst = worst.min(report.slack);
                    reports += 1;
                    ensure(report.slack >= -1e-9, || format!("trial {trial} {f}: slack {:e}", report.slack))?;
                }
            }
        }
    }

    // diag(1, -1) padded to 4 with x = 1.
    let a = validate_hermitian(&ComplexMatrix::from_real_diagonal(&[1.0, -1.0]), ValidationLevel::Hermitian).map_err(e)?;
    let f = BlockFactorization::new(2, 2).map_err(e)?;
    let report = check_shifted(&a, EmbeddingSpec::top_left(4), f, 1.0, DEFAULT_TOLERANCE).map_err(e)?;
    let (ln2, ln3, ln4) = (LN_2, 3f64.ln(), 4f64.ln());
    let lhs = report.term(terms::SHIFTED_LHS).ok_or("missing shifted_lhs")?;
    let lhs_gap = (lhs - (-2.0 * ln2 - 4.0 * ln4)).abs();
    let rhs_gap = (report.rhs - (-4.0 * ln2 - 3.0 * ln3 + 4.0 * ln4)).abs();
    ensure(lhs_gap <= 1e-12 && rhs_gap <= 1e-12, || {
        format!("hand case off by {lhs_gap:e} / {rhs_gap:e}")
    })?;
    Ok(format!("{reports} reports, min slack {worst:.3e}; hand case off by {:.1e}", lhs_gap.max(rhs_gap)))
}

// ---------------------------------------------------------------------------
// 8

fn ssa_analog() -> Outcome {
    let mut gen = SeededGenerator::new(8, 0);
    let mut worst = f64::INFINITY;
    for _ in 0..500 {
        let rho = random_mixed_density(&mut gen, 8).map_err(e)?;
        let slack = check_ssa_analog(&rho, [2, 2, 2], DEFAULT_TOLERANCE).map_err(e)?.slack;
        worst = worst.min(slack);
    }
    ensure(worst >= -1e-9, || format!("min slack {worst:e}"))?;

    let mut ghz = vec![Complex64::new(0.0, 0.0); 8];
    ghz[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    ghz[7] = ghz[0];
    let ghz = density(&ComplexMatrix::outer(&ghz, &ghz).hermitian_part())?;
    let ghz_slack = check_ssa_analog(&ghz, [2, 2, 2], DEFAULT_TOLERANCE).map_err(e)?.slack;
    ensure((ghz_slack - LN_2).abs() <= 1e-9, || format!("GHZ slack {ghz_slack}"))?;

    let parts: Vec<_> = (0..3).map(|_| random_mixed_density(&mut gen, 2)).collect::<Result<_, _>>().map_err(e)?;
    let product = density(&parts[0].matrix().kron(parts[1].matrix()).kron(parts[2].matrix()))?;
    let product_slack = check_ssa_analog(&product, [2, 2, 2], DEFAULT_TOLERANCE).map_err(e)?.slack;
    ensure(product_slack.abs() <= 1e-9, || format!("product slack {product_slack:e}"))?;
    Ok(format!("500 inputs, min slack {worst:.3e}; GHZ {ghz_slack:.12}; product {product_slack:.1e}"))
}

// ---------------------------------------------------------------------------
// 9

fn oracle_equivalence() -> Outcome {
    let mut gen = SeededGenerator::new(9, 0);
    let dims = [4, 6, 8, 9, 12, 16, 18, 20, 24];
    let (mut portrait_worst, mut entropy_worst): (f64, f64) = (0.0, 0.0);
    for trial in 0..100 {
        let dim = dims[trial % dims.len()];
        let a = gen.ginibre(dim, dim);
        for f in BlockFactorization::all_for(dim) {
            let (a1, a2) = portrait_matrices(&a, f).map_err(e)?;
            let (o1, o2) = oracle_portrait(&a, f).map_err(e)?;
            portrait_worst = portrait_worst.max(a1.max_abs_diff(&o1)).max(a2.max_abs_diff(&o2));
        }

        let rho = if trial % 4 == 0 {
            random_pure_density(&mut gen, dim).map_err(e)?
        } else {
            random_mixed_density(&mut gen, dim).map_err(e)?
        };
        let mut matrices = vec![rho.clone()];
        if let Some(&f) = BlockFactorization::nontrivial_for(dim).first() {
            let pair = portrait_pair(&rho, f).map_err(e)?;
            matrices.push(pair.a1().clone());
            matrices.push(pair.a2().clone());
        }
        for m in &matrices {
            let main = von_neumann_entropy(m).map_err(e)?;
            let oracle = oracle_entropy(m).map_err(e)?;
            entropy_worst = entropy_worst.max((main - oracle).abs());
        }
    }
    ensure(portrait_worst <= 1e-13, || format!("portrait diff {portrait_worst:e}"))?;
    ensure(entropy_worst <= 1e-8, || format!("entropy diff {entropy_worst:e}"))?;
    Ok(format!("100 inputs up to N=24, portrait diff {portrait_worst:.1e}, entropy diff {entropy_worst:.1e}"))
}

// ---------------------------------------------------------------------------
// 10

fn eigensolver_quality() -> Outcome {
    let mut gen = SeededGenerator::new(10, 0);
    let (mut recon_worst, mut ortho_worst): (f64, f64) = (0.0, 0.0);
    for dim in [2, 8, 16, 32] {
        for _ in 0..100 {
            let a = random_hermitian(&mut gen, dim, 1.0).map_err(e)?;
            let eig = eigh(&a).map_err(e)?;
            let norm = a.matrix().frobenius_norm();
            let recon = (a.matrix() - &eig.reconstruct()).frobenius_norm() / norm.max(1.0);
            let v = &eig.eigenvectors;
            let ortho = (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(dim));
            recon_worst = recon_worst.max(recon);
            ortho_worst = ortho_worst.max(ortho);
            ensure(recon <= 1e-10 && ortho <= 1e-11, || format!("dim {dim}: {recon:e}, {ortho:e}"))?;
        }
    }
    // The minimum eigenvalue of a density matrix is never meaningfully negative.
    let rho = random_mixed_density(&mut gen, 6).map_err(e)?;
    ensure(min_eigenvalue(&rho).map_err(e)? >= -1e-10, || "negative density eigenvalue".into())?;
    Ok(format!("400 matrices, reconstruction {recon_worst:.1e}, orthonormality {ortho_worst:.1e}"))
}

// ---------------------------------------------------------------------------
// 11

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_portrait"))
        .args(args)
        .env_remove("PORTRAIT_SEED")
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn cli_contract() -> Outcome {
    let dir = std::env::temp_dir().join(format!("portrait-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(e)?;
    let result = cli_contract_in(&dir);
    let _ = std::fs::remove_dir_all(&dir);
    result
}

fn cli_contract_in(dir: &Path) -> Outcome {
    let read = |p: &Path| std::fs::read(p).map_err(|err| format!("{}: {err}", p.display()));
    let same = |name: &str, actual: &[u8]| -> Result<(), String> {
        ensure(read(&golden(name))? == actual, || format!("{name} differs from golden"))
    };
    let status = |out: &Output| out.status.code().unwrap_or(-1);
    let mut goldens = 0;

    // gen: golden and byte-identical per (seed, stream).
    let gen_args = ["gen", "--kind", "mixed", "--dim", "4", "--seed", "7", "--stream", "1"];
    let (g1, g2) = (run(&gen_args), run(&gen_args));
    ensure(status(&g1) == 0 && g1.stdout == g2.stdout, || "gen is not deterministic".into())?;
    same("gen_mixed_dim4_seed7.json", &g1.stdout)?;
    goldens += 1;

    // portrait: two files per prefix.
    let prefix = dir.join("ex");
    let out = run(&[
        "portrait",
        path(&golden("labeled.json")),
        "--n",
        "2",
        "--m",
        "3",
        "--pad-to",
        "6",
        "--offset",
        "1",
        "--out",
        path(&prefix),
    ]);
    ensure(status(&out) == 0, || "portrait failed".into())?;
    same("portrait_labeled_pad6_2x3.a1.json", &read(&dir.join("ex.a1.json"))?)?;
    same("portrait_labeled_pad6_2x3.a2.json", &read(&dir.join("ex.a2.json"))?)?;
    goldens += 2;

    // check: report file and stdout.
    let report = dir.join("bell.report.json");
    let out = run(&[
        "check",
        path(&golden("bell.json")),
        "--kind",
        "subadd",
        "--n",
        "2",
        "--m",
        "2",
        "--out",
        path(&report),
        "--verify-oracle",
    ]);
    ensure(status(&out) == 0, || "check failed".into())?;
    same("check_bell_subadd.report.json", &read(&report)?)?;
    same("check_bell_subadd.txt", &out.stdout)?;
    goldens += 2;

    // mutinfo.
    let out = run(&["mutinfo", path(&golden("werner.json")), "--n", "2", "--verify-oracle"]);
    ensure(status(&out) == 0, || "mutinfo failed".into())?;
    same("mutinfo_werner.txt", &out.stdout)?;
    goldens += 1;

    // batch: golden summary, identical on rerun.
    let (b1, b2) = (dir.join("b1.json"), dir.join("b2.json"));
    for b in [&b1, &b2] {
        let out = run(&[
            "batch", "--kind", "subadd", "--dims", "4,6", "--trials", "20", "--seed", "5", "--report", path(b),
        ]);
        ensure(status(&out) == 0, || "batch failed".into())?;
    }
    ensure(read(&b1)? == read(&b2)?, || "batch is not deterministic".into())?;
    same("batch_subadd_seed5.json", &read(&b1)?)?;
    goldens += 1;

    // Exit codes.
    let product = golden("product.json");
    let codes = [
        (run(&["check", path(&product), "--kind", "subadd", "--n", "2"]), 0),
        (run(&["check", path(&product), "--kind", "subadd", "--n", "2", "--tol", "-1e-3"]), 1),
        (run(&["check", path(&golden("malformed.json")), "--kind", "subadd", "--n", "2"]), 2),
        (run(&["mutinfo", path(&golden("labeled.json")), "--n", "2"]), 2),
        (run(&["batch", "--kind", "ssa", "--dims", "8", "--trials", "0"]), 0),
        (
            run(&[
                "check",
                path(&golden("gen_mixed_dim4_seed7.json")),
                "--kind",
                "subadd",
                "--n",
                "2",
                "--verify-oracle",
                "--oracle-tol",
                "0",
            ]),
            3,
        ),
    ];
    for (i, (out, expected)) in codes.iter().enumerate() {
        ensure(status(out) == *expected, || {
            format!("exit case {i}: got {}, expected {expected}", status(out))
        })?;
    }
    Ok(format!("{goldens} golden files match, {} exit-code cases, reruns byte-identical", codes.len()))
}

// ---------------------------------------------------------------------------

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("subadditivity sweep", subadditivity_sweep),
        ("structural pins", structural_pins),
        ("pure-state Schmidt property", schmidt_property),
        ("unitary invariance", unitary_invariance),
        ("mutual information", mutual_information),
        ("scaled inequality", scaled_inequality),
        ("shifted inequality", shifted_inequality),
        ("strong subadditivity analog", ssa_analog),
        ("oracle equivalence", oracle_equivalence),
        ("eigensolver quality", eigensolver_quality),
        ("CLI contract", cli_contract),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
