//! Lists of complex numbers stored as `re, im` rows of decimal text.
//!
//! A polynomial file lists its coefficients starting with `a_0`. A row with a
//! single field is read as a real number.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::arith::{format_shortest, parse_decimal, BigComplex, ParseError, Precision};

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {source}")]
    Number {
        line: u64,
        #[source]
        source: ParseError,
    },
    #[error("line {line}: expected 1 or 2 fields, found {found}")]
    Fields { line: u64, found: usize },
    #[error("line {line}: {message}")]
    Record { line: u64, message: String },
}

/// Parse every row, rounding each part once to `prec`. Blank lines are
/// skipped.
pub fn parse_complex_list(text: &str, prec: Precision) -> Result<Vec<BigComplex>, CsvError> {
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record
            .map_err(|e| CsvError::Record { line: e.position().map_or(0, |p| p.line()), message: e.to_string() })?;
        let line = record.position().map_or(0, |p| p.line());
        let fields: Vec<&str> = record.iter().collect();
        if fields.len() == 1 && fields[0].is_empty() {
            continue;
        }
        let num = |s: &str| parse_decimal(s, prec).map_err(|source| CsvError::Number { line, source });
        let z = match fields.as_slice() {
            [re] => BigComplex::real(num(re)?),
            [re, im] => BigComplex::new(num(re)?, num(im)?),
            _ => return Err(CsvError::Fields { line, found: fields.len() }),
        };
        out.push(z);
    }
    Ok(out)
}

/// One `re, im` row using the shortest decimals that read back exactly.
pub fn format_complex(z: &BigComplex) -> String {
    format!("{}, {}", format_shortest(&z.re), format_shortest(&z.im))
}

pub fn format_complex_list(values: &[BigComplex]) -> String {
    let mut s = String::new();
    for z in values {
        s.push_str(&format_complex(z));
        s.push('\n');
    }
    s
}

pub fn read_complex_file(path: &Path, prec: Precision) -> Result<Vec<BigComplex>, CsvError> {
    let text = fs::read_to_string(path).map_err(|source| CsvError::Io { path: path.display().to_string(), source })?;
    parse_complex_list(&text, prec)
}

pub fn write_complex_file(path: &Path, values: &[BigComplex]) -> Result<(), CsvError> {
    fs::write(path, format_complex_list(values))
        .map_err(|source| CsvError::Io { path: path.display().to_string(), source })
}
