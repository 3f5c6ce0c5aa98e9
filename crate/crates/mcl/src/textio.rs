//! Plain-text matrix fixtures.
//!
//! Format: a header line `q n m`, then n lines of m single characters each,
//! one per entry, using digits 0-9 then lowercase a-z for element indices.
//! Only fields with q <= 36 fit this alphabet; larger q is an error.

use std::io::{BufRead, Write};

use thiserror::Error;

use crate::gf::Field;
use crate::mat::Matrix;

pub const MAX_TEXT_Q: u32 = 36;

#[derive(Debug, Error)]
pub enum TextIoError {
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("missing or empty header line (expected `q n m`)")]
    MissingHeader,
    #[error("malformed header `{0}` (expected three integers `q n m`)")]
    BadHeader(String),
    #[error("field order {0} is not a prime power between 2 and 65536")]
    BadFieldOrder(u64),
    #[error("field order {0} exceeds {MAX_TEXT_Q}, the largest the digit alphabet covers")]
    OrderTooLargeForText(u64),
    #[error("expected {expected} matrix rows, found {found}")]
    RowCountMismatch { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLengthMismatch { row: usize, expected: usize, found: usize },
    #[error("invalid character `{ch}` at row {row}, column {col}")]
    BadDigit { ch: char, row: usize, col: usize },
    #[error("digit `{ch}` at row {row}, column {col} is {value}, outside GF({q})")]
    DigitOutOfRange { ch: char, row: usize, col: usize, value: u32, q: u32 },
}

fn digit_to_value(ch: char) -> Option<u32> {
    match ch {
        '0'..='9' => Some(ch as u32 - '0' as u32),
        'a'..='z' => Some(ch as u32 - 'a' as u32 + 10),
        _ => None,
    }
}

fn value_to_digit(v: u32) -> char {
    debug_assert!(v < MAX_TEXT_Q);
    if v < 10 {
        (b'0' + v as u8) as char
    } else {
        (b'a' + (v - 10) as u8) as char
    }
}

/// Parse a fixture from any reader. Returns the matrix with a freshly built
/// field handle for the q named in the header.
pub fn read_matrix(reader: impl BufRead) -> Result<Matrix, TextIoError> {
    let mut lines = reader.lines();
    let header = loop {
        match lines.next() {
            None => return Err(TextIoError::MissingHeader),
            Some(line) => {
                let line = line?;
                if !line.trim().is_empty() {
                    break line;
                }
            }
        }
    };
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(TextIoError::BadHeader(header.clone()));
    }
    let nums: Vec<u64> = parts
        .iter()
        .map(|s| s.parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| TextIoError::BadHeader(header.clone()))?;
    let (q, n, m) = (nums[0], nums[1] as usize, nums[2] as usize);
    if q > MAX_TEXT_Q as u64 {
        return Err(TextIoError::OrderTooLargeForText(q));
    }
    let field = Field::new(q).map_err(|_| TextIoError::BadFieldOrder(q))?;

    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    for line in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if rows.len() == n {
            return Err(TextIoError::RowCountMismatch { expected: n, found: n + 1 });
        }
        let row_idx = rows.len();
        let mut row = Vec::with_capacity(m);
        for (col, ch) in trimmed.chars().enumerate() {
            let v = digit_to_value(ch).ok_or(TextIoError::BadDigit { ch, row: row_idx, col })?;
            if v as u64 >= q {
                return Err(TextIoError::DigitOutOfRange {
                    ch,
                    row: row_idx,
                    col,
                    value: v,
                    q: q as u32,
                });
            }
            row.push(v as u64);
        }
        if row.len() != m {
            return Err(TextIoError::RowLengthMismatch {
                row: row_idx,
                expected: m,
                found: row.len(),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(TextIoError::RowCountMismatch { expected: n, found: rows.len() });
    }
    let flat: Vec<u64> = rows.into_iter().flatten().collect();
    Ok(Matrix::from_indices(field, n, m, &flat).expect("entries validated against q"))
}

/// Serialize a matrix in the fixture format.
pub fn write_matrix(writer: &mut impl Write, mat: &Matrix) -> Result<(), TextIoError> {
    let q = mat.field().q();
    if q > MAX_TEXT_Q {
        return Err(TextIoError::OrderTooLargeForText(q as u64));
    }
    writeln!(writer, "{} {} {}", q, mat.rows(), mat.cols())?;
    let mut line = String::with_capacity(mat.cols());
    for r in 0..mat.rows() {
        line.clear();
        for c in 0..mat.cols() {
            line.push(value_to_digit(mat.at(r, c).0 as u32));
        }
        writeln!(writer, "{line}")?;
    }
    Ok(())
}

pub fn read_matrix_file(path: &std::path::Path) -> Result<Matrix, TextIoError> {
    let file = std::fs::File::open(path)?;
    read_matrix(std::io::BufReader::new(file))
}

pub fn write_matrix_file(path: &std::path::Path, mat: &Matrix) -> Result<(), TextIoError> {
    let mut file = std::fs::File::create(path)?;
    write_matrix(&mut file, mat)
}

/// Render to an in-memory string (keeps examples and tests terse).
pub fn matrix_to_string(mat: &Matrix) -> Result<String, TextIoError> {
    let mut buf = Vec::new();
    write_matrix(&mut buf, mat)?;
    Ok(String::from_utf8(buf).expect("digit alphabet is ascii"))
}

pub fn matrix_from_str(s: &str) -> Result<Matrix, TextIoError> {
    read_matrix(std::io::Cursor::new(s))
}
