//! On-disk formats.
//!
//! A matrix file is JSON of the form
//!
//! ```json
//! {
//!   "dim": 2,
//!   "entries": [
//!     [[0.5, 0.0], [0.0, -0.5]],
//!     [[0.0, 0.5], [0.5, 0.0]]
//!   ]
//! }
//! ```
//!
//! with one `[re, im]` pair per entry. Numbers are written in shortest
//! round-trip form, so a parse/write cycle is lossless.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use portrait_core::{Complex64, ComplexMatrix, InequalityReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrixFile {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

/// A parsed matrix file together with the digest of its bytes.
#[derive(Debug, Clone)]
pub struct MatrixInput {
    pub matrix: ComplexMatrix,
    pub digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn parse_matrix(bytes: &[u8]) -> Result<ComplexMatrix, String> {
    let raw: RawMatrixFile = serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
    if raw.dim == 0 {
        return Err("dim must be at least 1".into());
    }
    if raw.entries.len() != raw.dim {
        return Err(format!("dim is {} but entries has {} rows", raw.dim, raw.entries.len()));
    }
    let mut data = Vec::with_capacity(raw.dim * raw.dim);
    for (r, row) in raw.entries.iter().enumerate() {
        if row.len() != raw.dim {
            return Err(format!("row {} has {} entries, expected {}", r, row.len(), raw.dim));
        }
        data.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
    }
    ComplexMatrix::new(raw.dim, raw.dim, data).map_err(|e| e.to_string())
}

pub fn read_matrix(path: &Path) -> Result<MatrixInput, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let matrix = parse_matrix(&bytes).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok(MatrixInput {
        matrix,
        digest: sha256_hex(&bytes),
    })
}

pub fn number(x: f64) -> String {
    // serde_json prints f64 through ryu: shortest representation that
    // parses back to the same value.
    serde_json::to_string(&x).expect("finite float")
}

/// Serializes a square matrix, one matrix row per line.
pub fn format_matrix(m: &ComplexMatrix) -> String {
    assert!(m.is_square(), "matrix files hold square matrices");
    let dim = m.rows();
    let mut out = format!("{{\n  \"dim\": {dim},\n  \"entries\": [\n");
    for r in 0..dim {
        let cells: Vec<String> = m
            .row(r)
            .iter()
            .map(|z| format!("[{}, {}]", number(z.re), number(z.im)))
            .collect();
        let sep = if r + 1 < dim { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", cells.join(", "));
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Machine-readable inequality report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub inequality: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub satisfied: bool,
    pub terms: BTreeMap<String, f64>,
    pub input_digest: String,
}

impl ReportFile {
    pub fn new(report: &InequalityReport, input_digest: &str) -> Self {
        Self {
            inequality: report.name.clone(),
            lhs: report.lhs,
            rhs: report.rhs,
            slack: report.slack,
            tolerance: report.tolerance,
            satisfied: report.satisfied,
            terms: report.terms.clone(),
            input_digest: input_digest.to_owned(),
        }
    }
}

/// Mutual information output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MutualInformationFile {
    pub quantity: String,
    pub value: f64,
    pub value_via_embedding: f64,
    pub terms: BTreeMap<String, f64>,
    pub input_digest: String,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
