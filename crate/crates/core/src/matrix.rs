//! Dense matrices with exact integer entries.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::GraphError;
use crate::index::{bit_indices, MultiIndex};

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Builds a matrix from fixed-size integer rows; all rows must have the
    /// same length.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| BigInt::from(v))).collect();
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = value;
    }

    /// Borrow row `i` as a slice.
    pub fn row(&self, i: usize) -> &[BigInt] {
        assert!(i < self.rows, "row out of bounds");
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Submatrix with rows and columns restricted to the given index sets,
    /// kept in ascending index order. Empty sets give a 0x0 matrix.
    pub fn submatrix(&self, rowset: &MultiIndex, colset: &MultiIndex) -> Result<Self, GraphError> {
        check_range(rowset, self.rows)?;
        check_range(colset, self.cols)?;
        Ok(self.submatrix_masks(rowset.bits(), colset.bits()))
    }

    /// Mask-addressed submatrix; callers guarantee the masks are in range.
    pub(crate) fn submatrix_masks(&self, rowmask: u64, colmask: u64) -> Self {
        let row_ids: Vec<usize> = bit_indices(rowmask).collect();
        let col_ids: Vec<usize> = bit_indices(colmask).collect();
        let mut data = Vec::with_capacity(row_ids.len() * col_ids.len());
        for &i in &row_ids {
            for &j in &col_ids {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: row_ids.len(),
            cols: col_ids.len(),
            data,
        }
    }

    /// Copy with one row and one column removed (a first-minor layout).
    pub fn deleted(&self, row: usize, col: usize) -> Self {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }
}

fn check_range(set: &MultiIndex, size: usize) -> Result<(), GraphError> {
    match set.iter().last() {
        Some(max) if max >= size => Err(GraphError::IndexOutOfRange { index: max, size }),
        _ => Ok(()),
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
