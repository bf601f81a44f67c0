//! The on-disk matrix format (JSON, version 1) and certificate files.
//!
//! Entries are written as `{re, im}` decimals carrying 17 significant
//! digits, which round-trip doubles exactly. Root-of-unity matrices may use
//! the alternative `{turns: t}` encoding meaning e^{2 pi i t}; quarter turns
//! decode to exact +-1 / +-i, so fourth-root matrices stay exact.

use crate::catalog::unit_phase_from_turns;
use crate::equivalence::EquivalenceCertificate;
use crate::linalg::ComplexMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use std::f64::consts::PI;
use std::path::Path;
use thiserror::Error;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    Version(u64),
    #[error("entry grid is not n x n for n = {n}")]
    Shape { n: usize },
    #[error("non-finite number in matrix file")]
    NonFinite,
    #[error("bad certificate: {0}")]
    BadCertificate(String),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct MatrixMetadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl MatrixMetadata {
    fn is_empty(&self) -> bool {
        self.name.is_none() && self.theta.is_none() && self.source.is_none()
    }
}

fn decimal17(v: f64) -> Result<Box<RawValue>, IoError> {
    if !v.is_finite() {
        return Err(IoError::NonFinite);
    }
    Ok(RawValue::from_string(format!("{v:.16e}"))?)
}

#[derive(Serialize)]
#[serde(untagged)]
enum EntryOut {
    Rect { re: Box<RawValue>, im: Box<RawValue> },
    Turns { turns: Box<RawValue> },
}

#[derive(Serialize)]
struct MatrixFileOut<'a> {
    n: usize,
    format_version: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<&'a MatrixMetadata>,
    entries: Vec<Vec<EntryOut>>,
}

fn render(
    n: usize,
    metadata: Option<&MatrixMetadata>,
    entries: Vec<Vec<EntryOut>>,
) -> Result<String, IoError> {
    let out = MatrixFileOut {
        n,
        format_version: FORMAT_VERSION,
        metadata: metadata.filter(|m| !m.is_empty()),
        entries,
    };
    let mut text = serde_json::to_string_pretty(&out)?;
    text.push('\n');
    Ok(text)
}

/// Serialize with rectangular `{re, im}` entries.
pub fn matrix_to_json(
    m: &ComplexMatrix,
    metadata: Option<&MatrixMetadata>,
) -> Result<String, IoError> {
    let n = m.n_rows();
    if !m.is_square() {
        return Err(IoError::Shape { n });
    }
    let mut entries = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            let e = m[(r, c)];
            row.push(EntryOut::Rect {
                re: decimal17(e.re)?,
                im: decimal17(e.im)?,
            });
        }
        entries.push(row);
    }
    render(n, metadata, entries)
}

/// Serialize a grid of phases given in turns with `{turns}` entries.
pub fn turns_to_json(
    turns: &[Vec<f64>],
    metadata: Option<&MatrixMetadata>,
) -> Result<String, IoError> {
    let n = turns.len();
    if turns.iter().any(|row| row.len() != n) {
        return Err(IoError::Shape { n });
    }
    let mut entries = Vec::with_capacity(n);
    for row in turns {
        let mut out_row = Vec::with_capacity(n);
        for &t in row {
            out_row.push(EntryOut::Turns { turns: decimal17(t)? });
        }
        entries.push(out_row);
    }
    render(n, metadata, entries)
}

/// Phase of a unit-modulus entry in turns, in (-1/2, 1/2]. Exact for
/// fourth roots of unity.
pub fn entry_to_turns(e: Complex64) -> f64 {
    e.arg() / (2.0 * PI)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryIn {
    Rect { re: f64, im: f64 },
    Turns { turns: f64 },
}

#[derive(Deserialize)]
struct MatrixFileIn {
    n: usize,
    format_version: u64,
    #[serde(default)]
    metadata: Option<MatrixMetadata>,
    entries: Vec<Vec<EntryIn>>,
}

pub fn matrix_from_json(text: &str) -> Result<(ComplexMatrix, Option<MatrixMetadata>), IoError> {
    let file: MatrixFileIn = serde_json::from_str(text)?;
    if file.format_version != FORMAT_VERSION {
        return Err(IoError::Version(file.format_version));
    }
    let n = file.n;
    if n == 0 || file.entries.len() != n || file.entries.iter().any(|row| row.len() != n) {
        return Err(IoError::Shape { n });
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for (r, row) in file.entries.iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            let value = match *entry {
                EntryIn::Rect { re, im } => Complex64::new(re, im),
                EntryIn::Turns { turns } => unit_phase_from_turns(turns),
            };
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(IoError::NonFinite);
            }
            m[(r, c)] = value;
        }
    }
    Ok((m, file.metadata))
}

pub fn write_matrix_file(
    path: &Path,
    m: &ComplexMatrix,
    metadata: Option<&MatrixMetadata>,
) -> Result<(), IoError> {
    std::fs::write(path, matrix_to_json(m, metadata)?)?;
    Ok(())
}

pub fn read_matrix_file(path: &Path) -> Result<(ComplexMatrix, Option<MatrixMetadata>), IoError> {
    matrix_from_json(&std::fs::read_to_string(path)?)
}

/// Certificate JSON: permutations as index arrays, diagonals as phases in
/// turns.
#[derive(Serialize, Deserialize)]
struct CertificateFile {
    n: usize,
    p1: Vec<usize>,
    d1_turns: Vec<f64>,
    d2_turns: Vec<f64>,
    p2: Vec<usize>,
}

pub fn certificate_to_json(cert: &EquivalenceCertificate) -> Result<String, IoError> {
    let file = CertificateFile {
        n: cert.order(),
        p1: cert.p1().to_vec(),
        d1_turns: cert.d1().iter().map(|&d| entry_to_turns(d)).collect(),
        d2_turns: cert.d2().iter().map(|&d| entry_to_turns(d)).collect(),
        p2: cert.p2().to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&file)?;
    text.push('\n');
    Ok(text)
}

pub fn certificate_from_json(text: &str) -> Result<EquivalenceCertificate, IoError> {
    let file: CertificateFile = serde_json::from_str(text)?;
    if file.p1.len() != file.n
        || file.p2.len() != file.n
        || file.d1_turns.len() != file.n
        || file.d2_turns.len() != file.n
    {
        return Err(IoError::BadCertificate(format!(
            "field lengths do not match n = {}",
            file.n
        )));
    }
    let d1 = file.d1_turns.iter().map(|&t| unit_phase_from_turns(t)).collect();
    let d2 = file.d2_turns.iter().map(|&t| unit_phase_from_turns(t)).collect();
    EquivalenceCertificate::new(file.p1, d1, d2, file.p2)
        .map_err(|e| IoError::BadCertificate(e.to_string()))
}

pub fn read_certificate_file(path: &Path) -> Result<EquivalenceCertificate, IoError> {
    certificate_from_json(&std::fs::read_to_string(path)?)
}
