//! Plain-text matrix format.
//!
//! ```text
//! # optional comment lines
//! 3
//! 0 1 2.5
//! 1 0 1
//! 2.5 1 0
//! ```
//!
//! The first non-comment line is `n`, followed by `n` rows of `n`
//! whitespace-separated nonnegative decimals. Blank lines and lines starting
//! with `#` are skipped. Decimals are read exactly: a file whose longest
//! fractional part has `k` digits is stored in units of `10^-k`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::space::{DissimilaritySpace, SpaceError, Value};

pub const DEFAULT_PRECISION: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing or malformed size line")]
    BadHeader,
    #[error("line {line}: expected {expected} values, found {found}")]
    WrongRowLength { line: usize, expected: usize, found: usize },
    #[error("expected {expected} rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("unexpected content after the last row at line {0}")]
    TrailingContent(usize),
    #[error("line {line}: cannot read {token:?} as a decimal")]
    BadNumber { line: usize, token: String },
    #[error("line {line}: {token:?} has more than {precision} fractional digits")]
    PrecisionExceeded { line: usize, token: String, precision: u32 },
    #[error("line {line}: {token:?} is out of range")]
    ValueOutOfRange { line: usize, token: String },
    #[error(transparent)]
    Invalid(#[from] SpaceError),
}

struct Token<'a> {
    line: usize,
    text: &'a str,
    int: &'a str,
    frac: &'a str,
}

pub fn parse_matrix(text: &str) -> Result<DissimilaritySpace, ParseError> {
    parse_matrix_with_precision(text, DEFAULT_PRECISION)
}

pub fn parse_matrix_with_precision(text: &str, precision: u32) -> Result<DissimilaritySpace, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let n: usize = match lines.next() {
        Some((_, l)) => l.parse().map_err(|_| ParseError::BadHeader)?,
        None => return Err(ParseError::BadHeader),
    };

    let mut rows: Vec<Vec<Token>> = Vec::with_capacity(n);
    for (line, l) in lines {
        if rows.len() == n {
            return Err(ParseError::TrailingContent(line));
        }
        let row = l
            .split_whitespace()
            .map(|t| split_decimal(line, t, precision))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(ParseError::WrongRowLength { line, expected: n, found: row.len() });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(ParseError::MissingRows { expected: n, found: rows.len() });
    }

    let scale = rows.iter().flatten().map(|t| t.frac.len() as u32).max().unwrap_or(0);
    let raw = rows
        .iter()
        .map(|r| r.iter().map(|t| to_units(t, scale)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DissimilaritySpace::validate(raw)?.with_scale(scale))
}

fn split_decimal(line: usize, text: &str, precision: u32) -> Result<Token<'_>, ParseError> {
    let bad = || ParseError::BadNumber { line, token: text.to_string() };
    let body = text.strip_prefix('+').unwrap_or(text);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() && frac.is_empty() || !digits(int) || !digits(frac) {
        // A leading '-' lands here too; negative entries are never valid.
        return Err(bad());
    }
    let frac = frac.trim_end_matches('0');
    if frac.len() > precision as usize {
        return Err(ParseError::PrecisionExceeded { line, token: text.to_string(), precision });
    }
    Ok(Token { line, text, int, frac })
}

fn to_units(t: &Token, scale: u32) -> Result<Value, ParseError> {
    let overflow = || ParseError::ValueOutOfRange { line: t.line, token: t.text.to_string() };
    let int: i64 = if t.int.is_empty() { 0 } else { t.int.parse().map_err(|_| overflow())? };
    let pad = scale as usize - t.frac.len();
    let frac: i64 = if t.frac.is_empty() { 0 } else { t.frac.parse().map_err(|_| overflow())? };
    let factor = 10i64.checked_pow(scale).ok_or_else(overflow)?;
    let frac = frac.checked_mul(10i64.pow(pad as u32)).ok_or_else(overflow)?;
    int.checked_mul(factor)
        .and_then(|v| v.checked_add(frac))
        .map(Value::from_units)
        .ok_or_else(overflow)
}

/// Renders a value in the decimal notation of its space, without trailing
/// fractional zeros.
pub fn format_value(v: Value, scale: u32) -> String {
    if scale == 0 {
        return v.units().to_string();
    }
    let factor = 10i64.pow(scale);
    let (int, frac) = (v.units() / factor, v.units() % factor);
    if frac == 0 {
        return int.to_string();
    }
    let frac = format!("{:0width$}", frac, width = scale as usize);
    format!("{}.{}", int, frac.trim_end_matches('0'))
}

pub fn write_matrix(space: &DissimilaritySpace) -> String {
    let n = space.len();
    let mut out = String::with_capacity(n * n * 3 + 8);
    writeln!(out, "{}", n).unwrap();
    for x in space.points() {
        let row: Vec<String> = space.row(x).iter().map(|v| format_value(v, space.scale())).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_decimals_exactly() {
        let s = parse_matrix("# c\n3\n0 1 2.5\n1 0 0.25\n\n2.5 .25 0\n").unwrap();
        assert_eq!(s.scale(), 2);
        assert_eq!(s.d(0, 2), Value::from_units(250));
        assert_eq!(s.d(1, 2), Value::from_units(25));
        assert_eq!(write_matrix(&s), "3\n0 1 2.5\n1 0 0.25\n2.5 0.25 0\n");
    }

    #[test]
    fn trailing_zeros_do_not_count_toward_precision() {
        let s = parse_matrix_with_precision("2\n0 1.500\n1.5 0\n", 1).unwrap();
        assert_eq!(s.scale(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_matrix(""), Err(ParseError::BadHeader));
        assert_eq!(parse_matrix("x\n"), Err(ParseError::BadHeader));
        assert!(matches!(parse_matrix("2\n0 1\n"), Err(ParseError::MissingRows { .. })));
        assert!(matches!(parse_matrix("2\n0 1 1\n1 0\n"), Err(ParseError::WrongRowLength { line: 2, .. })));
        assert!(matches!(parse_matrix("2\n0 -1\n-1 0\n"), Err(ParseError::BadNumber { .. })));
        assert!(matches!(parse_matrix("2\n0 1e3\n1e3 0\n"), Err(ParseError::BadNumber { .. })));
        assert!(matches!(
            parse_matrix_with_precision("2\n0 0.125\n0.125 0\n", 2),
            Err(ParseError::PrecisionExceeded { .. })
        ));
        assert!(matches!(
            parse_matrix("2\n0 99999999999999999999\n1 0\n"),
            Err(ParseError::ValueOutOfRange { .. })
        ));
        assert_eq!(parse_matrix("2\n0 1\n2 0\n"), Err(ParseError::Invalid(SpaceError::Asymmetric(0, 1))));
        assert!(matches!(parse_matrix("1\n0\n0\n"), Err(ParseError::TrailingContent(3))));
    }

    #[test]
    fn symmetry_is_checked_after_scaling() {
        assert!(parse_matrix("2\n0 1.0\n1 0\n").is_ok());
    }
}
