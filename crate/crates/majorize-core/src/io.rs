//! File formats shared by the command-line front end and the test suites:
//! sequences as JSON arrays or newline-delimited decimals, matrices as
//! `{dim, entries}` with `[re, im]` pairs row-major, and exact step
//! sequences with decimal-string endpoints and rational log2 values.

use std::path::Path;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyadic::{DyadicStepSeq, Log2Value, StepInterval};
use crate::spectral::DenseMatrix;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse: {0}")]
    Parse(String),
}

/// Loads a real sequence: a JSON array of finite doubles, or a text file of
/// whitespace/newline-delimited decimals.
pub fn load_sequence(path: &Path) -> Result<Vec<f64>, IoError> {
    let text = std::fs::read_to_string(path)?;
    parse_sequence(&text)
}

pub fn parse_sequence(text: &str) -> Result<Vec<f64>, IoError> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let values: Vec<f64> = serde_json::from_str(trimmed)
            .map_err(|e| IoError::Parse(format!("JSON sequence: {e}")))?;
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(IoError::Parse(format!("non-finite entry {v}")));
        }
        return Ok(values);
    }
    let mut values = Vec::new();
    for tok in trimmed.split_whitespace() {
        let v: f64 = tok
            .parse()
            .map_err(|_| IoError::Parse(format!("bad decimal {tok:?}")))?;
        if !v.is_finite() {
            return Err(IoError::Parse(format!("non-finite entry {tok:?}")));
        }
        values.push(v);
    }
    Ok(values)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    /// Row-major `[re, im]` pairs.
    pub entries: Vec<[f64; 2]>,
}

pub fn load_matrix(path: &Path) -> Result<DenseMatrix, IoError> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix, IoError> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| IoError::Parse(format!("matrix JSON: {e}")))?;
    let data: Vec<Complex64> = file
        .entries
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    DenseMatrix::new(file.dim, data).map_err(|e| IoError::Parse(e.to_string()))
}

pub fn matrix_to_json(m: &DenseMatrix) -> String {
    let file = MatrixFile {
        dim: m.dim(),
        entries: m.data().iter().map(|z| [z.re, z.im]).collect(),
    };
    serde_json::to_string_pretty(&file).expect("matrix serializes")
}

#[derive(Debug, Serialize, Deserialize)]
struct StepIntervalFile {
    start: String,
    end: String,
    log2: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct DyadicFile {
    intervals: Vec<StepIntervalFile>,
}

pub fn load_dyadic(path: &Path) -> Result<DyadicStepSeq, IoError> {
    let text = std::fs::read_to_string(path)?;
    parse_dyadic(&text)
}

pub fn parse_dyadic(text: &str) -> Result<DyadicStepSeq, IoError> {
    let file: DyadicFile = serde_json::from_str(text)
        .map_err(|e| IoError::Parse(format!("step-sequence JSON: {e}")))?;
    let mut intervals = Vec::with_capacity(file.intervals.len());
    for iv in &file.intervals {
        let start = BigUint::from_str(&iv.start)
            .map_err(|_| IoError::Parse(format!("bad start {:?}", iv.start)))?;
        let end = if iv.end == "inf" {
            None
        } else {
            Some(
                BigUint::from_str(&iv.end)
                    .map_err(|_| IoError::Parse(format!("bad end {:?}", iv.end)))?,
            )
        };
        let log2 = if iv.log2 == "-inf" {
            Log2Value::NegInf
        } else if let Some((p, q)) = iv.log2.split_once('/') {
            let p = BigInt::from_str(p.trim())
                .map_err(|_| IoError::Parse(format!("bad log2 {:?}", iv.log2)))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|_| IoError::Parse(format!("bad log2 {:?}", iv.log2)))?;
            Log2Value::Finite(BigRational::new(p, q))
        } else {
            let p = BigInt::from_str(iv.log2.trim())
                .map_err(|_| IoError::Parse(format!("bad log2 {:?}", iv.log2)))?;
            Log2Value::Finite(BigRational::from_integer(p))
        };
        intervals.push(StepInterval { start, end, log2 });
    }
    DyadicStepSeq::new(intervals).map_err(|e| IoError::Parse(e.to_string()))
}

pub fn dyadic_to_json(seq: &DyadicStepSeq) -> String {
    let file = DyadicFile {
        intervals: seq
            .intervals()
            .iter()
            .map(|iv| StepIntervalFile {
                start: iv.start.to_string(),
                end: iv.end.as_ref().map_or("inf".to_string(), |e| e.to_string()),
                log2: iv.log2.to_string(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("step sequence serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::tower_sequence;

    #[test]
    fn sequence_both_formats() {
        let a = parse_sequence("[1.0, 0.5, 0.25]").unwrap();
        assert_eq!(a, vec![1.0, 0.5, 0.25]);
        let b = parse_sequence("1.0\n0.5\n0.25\n").unwrap();
        assert_eq!(a, b);
        assert!(parse_sequence("[1.0, \"x\"]").is_err());
    }

    #[test]
    fn matrix_roundtrip() {
        let m = DenseMatrix::from_real(2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let text = matrix_to_json(&m);
        let back = parse_matrix(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn dyadic_roundtrip_and_hand_written() {
        let t = tower_sequence(2).unwrap();
        let text = dyadic_to_json(&t);
        let back = parse_dyadic(&text).unwrap();
        assert_eq!(t, back);

        let hand = r#"{"intervals": [
            {"start": "0", "end": "4", "log2": "-1/2"},
            {"start": "4", "end": "inf", "log2": "-inf"}
        ]}"#;
        let seq = parse_dyadic(hand).unwrap();
        assert!(seq.horizon().is_none());
        assert_eq!(
            *seq.value_at(&BigUint::from(3u32)).unwrap(),
            Log2Value::Finite(BigRational::new(BigInt::from(-1), BigInt::from(2)))
        );
    }
}
