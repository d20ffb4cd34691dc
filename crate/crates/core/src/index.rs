//! Blade indices: subsets of generator positions, stored as bitmasks.
//!
//! Every blade of the zeon or Clifford algebra on `n` generators is labelled
//! by a subset of `{0, …, n-1}`. A [`MultiIndex`] is such a subset together
//! with its ambient generator count, canonically ordered by ascending
//! position. All blade signs elsewhere in the crate are computed relative to
//! that ascending order.

use std::fmt;

use thiserror::Error;

/// Hard cap on ambient generator counts. Everything downstream is
/// exponential in `n`, so a single machine word per blade index suffices.
pub const MAX_GENERATORS: usize = 64;

/// Errors from blade-index and algebra-element construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} generators requested, at most {MAX_GENERATORS} supported")]
    TooManyGenerators(usize),
    #[error("generator index {index} out of range for {n} generators")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("ambient generator counts differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
}

/// Bitmask with the low `n` bits set.
pub(crate) fn low_mask(n: usize) -> u64 {
    debug_assert!(n <= MAX_GENERATORS);
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `{0, …, n-1}` identifying a basis blade.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    bits: u64,
    n: usize,
}

impl MultiIndex {
    /// The empty index (labels the scalar blade).
    pub fn empty(n: usize) -> Result<Self, AlgebraError> {
        Self::from_bits(0, n)
    }

    /// The full index `{0, …, n-1}`.
    pub fn full(n: usize) -> Result<Self, AlgebraError> {
        if n > MAX_GENERATORS {
            return Err(AlgebraError::TooManyGenerators(n));
        }
        Ok(Self { bits: low_mask(n), n })
    }

    /// Index from a raw bitmask; every set bit must lie below `n`.
    pub fn from_bits(bits: u64, n: usize) -> Result<Self, AlgebraError> {
        if n > MAX_GENERATORS {
            return Err(AlgebraError::TooManyGenerators(n));
        }
        if bits & !low_mask(n) != 0 {
            let index = (63 - bits.leading_zeros()) as usize;
            return Err(AlgebraError::IndexOutOfRange { index, n });
        }
        Ok(Self { bits, n })
    }

    /// Index containing the single position `i`.
    pub fn singleton(i: usize, n: usize) -> Result<Self, AlgebraError> {
        if n > MAX_GENERATORS {
            return Err(AlgebraError::TooManyGenerators(n));
        }
        if i >= n {
            return Err(AlgebraError::IndexOutOfRange { index: i, n });
        }
        Ok(Self { bits: 1u64 << i, n })
    }

    /// Index from explicit positions (duplicates collapse).
    pub fn from_indices<I>(indices: I, n: usize) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = usize>,
    {
        if n > MAX_GENERATORS {
            return Err(AlgebraError::TooManyGenerators(n));
        }
        let mut bits = 0u64;
        for i in indices {
            if i >= n {
                return Err(AlgebraError::IndexOutOfRange { index: i, n });
            }
            bits |= 1u64 << i;
        }
        Ok(Self { bits, n })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Ambient generator count.
    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Number of elements `|I|`.
    pub fn cardinality(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.bits & (1u64 << i) != 0
    }

    /// Complement within the ambient set `{0, …, n-1}`.
    pub fn complement(&self) -> Self {
        Self {
            bits: !self.bits & low_mask(self.n),
            n: self.n,
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    pub fn union(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ambient(other)?;
        Ok(Self {
            bits: self.bits | other.bits,
            n: self.n,
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ambient(other)?;
        Ok(Self {
            bits: self.bits & other.bits,
            n: self.n,
        })
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        bit_indices(self.bits)
    }

    fn check_ambient(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiIndex({}; n={})", self, self.n)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Set bit positions of `mask`, ascending.
pub(crate) fn bit_indices(mask: u64) -> BitIndices {
    BitIndices(mask)
}

pub(crate) struct BitIndices(u64);

impl Iterator for BitIndices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Next mask with the same popcount in counting order (Gosper's hack),
/// or `None` once the sequence leaves the 64-bit range.
fn gosper_next(mask: u64) -> Option<u64> {
    if mask == 0 {
        return None;
    }
    let lowest = mask & mask.wrapping_neg();
    let carried = mask.checked_add(lowest)?;
    Some(carried + (((mask ^ carried) / lowest) >> 2))
}

/// All `k`-element subsets of `{0, …, n-1}` as bitmasks, ascending.
///
/// Empty when `k > n`; yields the single mask `0` when `k == 0`.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    assert!(n <= MAX_GENERATORS, "subset enumeration capped at {MAX_GENERATORS} bits");
    let cur = if k > n {
        None
    } else {
        Some(low_mask(k))
    };
    KSubsets { cur, n }
}

pub struct KSubsets {
    cur: Option<u64>,
    n: usize,
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let mask = self.cur?;
        self.cur = gosper_next(mask).filter(|&m| m & !low_mask(self.n) == 0);
        Some(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_oversized_ambient() {
        assert_eq!(MultiIndex::empty(65), Err(AlgebraError::TooManyGenerators(65)));
        assert!(MultiIndex::empty(64).is_ok());
        assert_eq!(MultiIndex::full(64).unwrap().cardinality(), 64);
    }

    #[test]
    fn rejects_out_of_range_bits() {
        assert!(matches!(
            MultiIndex::from_bits(0b1000, 3),
            Err(AlgebraError::IndexOutOfRange { index: 3, n: 3 })
        ));
        assert!(MultiIndex::from_bits(0b101, 3).is_ok());
    }

    #[test]
    fn complement_and_membership() {
        let i = MultiIndex::from_indices([0, 2], 4).unwrap();
        assert!(i.contains(0) && !i.contains(1) && i.contains(2));
        let c = i.complement();
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(c.complement(), i);
    }

    #[test]
    fn iteration_is_ascending() {
        let i = MultiIndex::from_indices([5, 1, 3], 6).unwrap();
        assert_eq!(i.iter().collect::<Vec<_>>(), vec![1, 3, 5]);
        assert_eq!(i.to_string(), "{1,3,5}");
    }

    #[test]
    fn k_subset_enumeration_counts() {
        assert_eq!(k_subsets(5, 2).count(), 10);
        assert_eq!(k_subsets(6, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(4, 5).count(), 0);
        assert_eq!(k_subsets(4, 4).collect::<Vec<_>>(), vec![0b1111]);
        // ascending and all distinct
        let subs: Vec<u64> = k_subsets(7, 3).collect();
        assert_eq!(subs.len(), 35);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|m| m.count_ones() == 3));
    }

    #[test]
    fn ambient_mismatch_detected() {
        let a = MultiIndex::empty(3).unwrap();
        let b = MultiIndex::empty(4).unwrap();
        assert!(matches!(a.union(&b), Err(AlgebraError::AmbientMismatch { .. })));
    }
}
