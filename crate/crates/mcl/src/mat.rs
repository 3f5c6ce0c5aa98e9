//! Dense row-major matrices over a shared GF(q).
//!
//! The workhorse is [`Matrix::rref`], which returns the reduced row echelon
//! form together with the nonsingular transform that produced it (R = T * M)
//! and a count of field multiply/add operations, used by complexity tests.

use std::fmt;

use thiserror::Error;

use crate::gf::{Fe, FieldRef, GfError, ONE, ZERO};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("dimension mismatch: left is {lr}x{lc}, right is {rr}x{rc}")]
    DimensionMismatch { lr: usize, lc: usize, rr: usize, rc: usize },
    #[error("matrices belong to different fields (GF({0}) vs GF({1}))")]
    FieldMismatch(u32, u32),
    #[error("matrix data length {got} does not match {rows}x{cols}")]
    BadDataLength { rows: usize, cols: usize, got: usize },
    #[error("element index {0} is not a valid GF({1}) element")]
    BadElement(u64, u32),
    #[error("matrix is singular (rank {rank} < {n})")]
    Singular { rank: usize, n: usize },
    #[error("no solution: right-hand side is outside the row space")]
    Inconsistent,
    #[error("block out of range: rows {r0}..{r1}, cols {c0}..{c1} in {rows}x{cols}")]
    BlockOutOfRange { r0: usize, r1: usize, c0: usize, c1: usize, rows: usize, cols: usize },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Result of Gauss-Jordan reduction: `matrix = transform * original`,
/// `transform` nonsingular, pivots listed in column order.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
    /// Field multiply/add operations spent on the reduced matrix itself
    /// (transform bookkeeping excluded), for complexity assertions.
    pub ops: u64,
}

#[derive(Clone)]
pub struct Matrix {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over GF({}) [", self.rows, self.cols, self.field.q())?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{:>3}", self.data[r * self.cols + c].0)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|e| decimal_width(e.0)).max().unwrap_or(1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.data[r * self.cols + c].0)?;
            }
            if r + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

fn decimal_width(x: u16) -> usize {
    let mut w = 1;
    let mut x = x / 10;
    while x > 0 {
        w += 1;
        x /= 10;
    }
    w
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Matrix {
    pub fn zero(field: FieldRef, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(field: FieldRef, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Build from row-major element indices, validating each against the field.
    pub fn from_indices(field: FieldRef, rows: usize, cols: usize, data: &[u64]) -> Result<Matrix, MatError> {
        if data.len() != rows * cols {
            return Err(MatError::BadDataLength { rows, cols, got: data.len() });
        }
        let mut out = Vec::with_capacity(data.len());
        for &v in data {
            out.push(field.fe(v).map_err(|_| MatError::BadElement(v, field.q()))?);
        }
        Ok(Matrix { field, rows, cols, data: out })
    }

    pub fn from_fn(field: FieldRef, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fe) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn at(&self, r: usize, c: usize) -> Fe {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == ZERO)
    }

    fn check_same_field(&self, other: &Matrix) -> Result<(), MatError> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(MatError::FieldMismatch(self.field.q(), other.field.q()))
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatError> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::DimensionMismatch {
                lr: self.rows, lc: self.cols, rr: other.rows, rc: other.cols,
            });
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatError> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::DimensionMismatch {
                lr: self.rows, lc: self.cols, rr: other.rows, rc: other.cols,
            });
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatError> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(MatError::DimensionMismatch {
                lr: self.rows, lc: self.cols, rr: other.rows, rc: other.cols,
            });
        }
        let f = &self.field;
        let mut out = Matrix::zero(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.data[k * other.cols + c];
                    if b == ZERO {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: Fe) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |r, c| self.at(c, r))
    }

    /// Copy of the sub-block rows r0..r1, cols c0..c1 (half-open).
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Result<Matrix, MatError> {
        if r0 > r1 || r1 > self.rows || c0 > c1 || c1 > self.cols {
            return Err(MatError::BlockOutOfRange {
                r0, r1, c0, c1, rows: self.rows, cols: self.cols,
            });
        }
        Ok(Matrix::from_fn(self.field.clone(), r1 - r0, c1 - c0, |r, c| {
            self.at(r0 + r, c0 + c)
        }))
    }

    /// Overwrite the sub-block starting at (r0, c0) with `src`.
    pub fn set_block(&mut self, r0: usize, c0: usize, src: &Matrix) -> Result<(), MatError> {
        self.check_same_field(src)?;
        if r0 + src.rows > self.rows || c0 + src.cols > self.cols {
            return Err(MatError::BlockOutOfRange {
                r0, r1: r0 + src.rows, c0, c1: c0 + src.cols, rows: self.rows, cols: self.cols,
            });
        }
        for r in 0..src.rows {
            for c in 0..src.cols {
                self.set(r0 + r, c0 + c, src.at(r, c));
            }
        }
        Ok(())
    }

    /// `[self | right]` side by side.
    pub fn hstack(&self, right: &Matrix) -> Result<Matrix, MatError> {
        self.check_same_field(right)?;
        if self.rows != right.rows {
            return Err(MatError::DimensionMismatch {
                lr: self.rows, lc: self.cols, rr: right.rows, rc: right.cols,
            });
        }
        let mut out = Matrix::zero(self.field.clone(), self.rows, self.cols + right.cols);
        out.set_block(0, 0, self)?;
        out.set_block(0, self.cols, right)?;
        Ok(out)
    }

    /// `[self; below]` stacked vertically.
    pub fn vstack(&self, below: &Matrix) -> Result<Matrix, MatError> {
        self.check_same_field(below)?;
        if self.cols != below.cols {
            return Err(MatError::DimensionMismatch {
                lr: self.rows, lc: self.cols, rr: below.rows, rc: below.cols,
            });
        }
        let mut out = Matrix::zero(self.field.clone(), self.rows + below.rows, self.cols);
        out.set_block(0, 0, self)?;
        out.set_block(self.rows, 0, below)?;
        Ok(out)
    }

    /// Gauss-Jordan reduction with deterministic pivoting: columns scanned
    /// left to right, pivot row = first row at or below the current row with
    /// a nonzero entry. Returns R, rank, pivot columns, and T with R = T*self.
    pub fn rref(&self) -> Rref {
        let f = self.field.clone();
        let mut r = self.clone();
        let mut t = Matrix::identity(f.clone(), self.rows);
        let mut pivots = Vec::new();
        let mut ops: u64 = 0;
        let mut pivot_row = 0usize;

        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&rr| r.at(rr, col) != ZERO);
            let src = match found {
                Some(s) => s,
                None => continue,
            };
            if src != pivot_row {
                for c in 0..r.cols {
                    let tmp = r.at(pivot_row, c);
                    r.set(pivot_row, c, r.at(src, c));
                    r.set(src, c, tmp);
                }
                for c in 0..t.cols {
                    let tmp = t.at(pivot_row, c);
                    t.set(pivot_row, c, t.at(src, c));
                    t.set(src, c, tmp);
                }
            }
            let pv = r.at(pivot_row, col);
            if pv != ONE {
                let inv = f.inv(pv).expect("pivot is nonzero");
                for c in 0..r.cols {
                    r.set(pivot_row, c, f.mul(r.at(pivot_row, c), inv));
                    ops += 1;
                }
                for c in 0..t.cols {
                    t.set(pivot_row, c, f.mul(t.at(pivot_row, c), inv));
                }
            }
            for rr in 0..self.rows {
                if rr == pivot_row {
                    continue;
                }
                let factor = r.at(rr, col);
                if factor == ZERO {
                    continue;
                }
                for c in 0..r.cols {
                    let delta = f.mul(factor, r.at(pivot_row, c));
                    r.set(rr, c, f.sub(r.at(rr, c), delta));
                    ops += 2;
                }
                for c in 0..t.cols {
                    let delta = f.mul(factor, t.at(pivot_row, c));
                    t.set(rr, c, f.sub(t.at(rr, c), delta));
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }

        Rref { matrix: r, rank: pivot_row, pivots, transform: t, ops }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Inverse of a square matrix via the RREF transform certificate.
    pub fn inverse(&self) -> Result<Matrix, MatError> {
        if self.rows != self.cols {
            return Err(MatError::DimensionMismatch {
                lr: self.rows, lc: self.cols, rr: self.cols, rc: self.rows,
            });
        }
        let red = self.rref();
        if red.rank < self.rows {
            return Err(MatError::Singular { rank: red.rank, n: self.rows });
        }
        // Full rank square RREF is the identity, so T itself is the inverse.
        Ok(red.transform)
    }

    /// Any solution X of X * A = B, where A is self (rows x cols) and B has
    /// the same column count. Errors if B's rows are outside A's row space.
    pub fn solve_left(&self, b: &Matrix) -> Result<Matrix, MatError> {
        self.check_same_field(b)?;
        if b.cols != self.cols {
            return Err(MatError::DimensionMismatch {
                lr: self.rows, lc: self.cols, rr: b.rows, rc: b.cols,
            });
        }
        let red = self.rref();
        let f = self.field.clone();
        // Express each row of B over the RREF rows of A: coefficients are
        // read off at pivot columns, consistency checked by re-subtraction.
        let mut coeff = Matrix::zero(f.clone(), b.rows, self.rows);
        for r in 0..b.rows {
            let mut residue: Vec<Fe> = (0..b.cols).map(|c| b.at(r, c)).collect();
            for (i, &pc) in red.pivots.iter().enumerate() {
                let w = residue[pc];
                if w == ZERO {
                    continue;
                }
                coeff.set(r, i, w);
                for c in 0..b.cols {
                    let delta = f.mul(w, red.matrix.at(i, c));
                    residue[c] = f.sub(residue[c], delta);
                }
            }
            if residue.iter().any(|&e| e != ZERO) {
                return Err(MatError::Inconsistent);
            }
        }
        // Row i of RREF(A) is row i of T*A, so X = coeff * T solves X*A = B.
        coeff.mul(&red.transform)
    }
}
