//! Exact determinant and permanent kernels.
//!
//! Both kernels stay in arbitrary-precision integers throughout: the
//! determinant uses Bareiss fraction-free elimination (every division is
//! exact by Sylvester's identity) and the permanent uses Ryser's
//! inclusion-exclusion with Gray-code column updates. The permutation-sum
//! permanent is kept as an independent oracle for cross-checking.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::IntMatrix;

/// Exact count: arbitrary-precision signed integer.
pub type BigCount = BigInt;

/// Dimension cap for the permutation-sum permanent oracle.
pub const PER_NAIVE_MAX_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {dim} exceeds the limit {max} for this kernel")]
    SizeLimit { dim: usize, max: usize },
}

fn require_square(m: &IntMatrix) -> Result<usize, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(m.rows())
}

/// Exact determinant by Bareiss fraction-free elimination.
///
/// The 0x0 determinant is 1. A zero pivot is repaired by swapping in the
/// first row with a nonzero entry in the pivot column (flipping the sign);
/// if none exists the determinant is zero.
pub fn det(m: &IntMatrix) -> Result<BigCount, LinalgError> {
    let n = require_square(m)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev_pivot = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let num = &pivot_row[k] * &row[j] - &row[k] * &pivot_row[j];
                row[j] = num / &prev_pivot; // exact
            }
            row[k] = BigInt::zero();
        }
        prev_pivot = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Exact permanent by Ryser's formula with Gray-code subset updates.
///
/// `per(M) = (-1)^n Σ_{S ⊆ cols} (-1)^{|S|} Π_i Σ_{j∈S} m_ij`; the running
/// row sums change by a single column per Gray-code step. The 0x0 permanent
/// is 1 (the empty permutation).
pub fn per(m: &IntMatrix) -> Result<BigCount, LinalgError> {
    let n = require_square(m)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut row_sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut prev_gray: u128 = 0;
    let bound: u128 = 1u128 << n;
    let mut counter: u128 = 1;
    while counter < bound {
        let gray = counter ^ (counter >> 1);
        let flipped = gray ^ prev_gray;
        let j = flipped.trailing_zeros() as usize;
        if gray & flipped != 0 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += m.get(i, j);
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= m.get(i, j);
            }
        }
        prev_gray = gray;
        counter += 1;

        let mut product = BigInt::one();
        let mut vanished = false;
        for s in &row_sums {
            if s.is_zero() {
                vanished = true;
                break;
            }
            product *= s;
        }
        if vanished {
            continue;
        }
        let picked = gray.count_ones() as usize;
        if (n - picked).is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
    }
    Ok(total)
}

/// Permanent straight from the permutation sum; an independent oracle for
/// [`per`], capped at 10x10.
pub fn per_naive(m: &IntMatrix) -> Result<BigCount, LinalgError> {
    let n = require_square(m)?;
    if n > PER_NAIVE_MAX_DIM {
        return Err(LinalgError::SizeLimit { dim: n, max: PER_NAIVE_MAX_DIM });
    }
    fn expand(m: &IntMatrix, row: usize, used: u32) -> BigInt {
        let n = m.rows();
        if row == n {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if used & (1 << j) != 0 {
                continue;
            }
            let entry = m.get(row, j);
            if entry.is_zero() {
                continue;
            }
            acc += entry * expand(m, row + 1, used | (1 << j));
        }
        acc
    }
    Ok(expand(m, 0, 0))
}
