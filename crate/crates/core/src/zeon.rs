//! The zeon algebra: commuting generators `z_i` with `z_i^2 = 0`.
//!
//! Elements are finite sums `Σ u_I z_I` over blades `z_I = Π_{i∈I} z_i`,
//! with exact integer coefficients. The blade product is
//! `z_I · z_J = z_{I∪J}` when `I ∩ J = ∅` and `0` otherwise, which makes
//! the algebra commutative and every generator nilpotent of order two.
//! Elements are normalized: a zero coefficient is never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::index::{bit_indices, AlgebraError, MultiIndex, MAX_GENERATORS};

/// An exact element of the zeon algebra on `n` generators.
#[derive(Clone, PartialEq, Eq)]
pub struct ZeonElement {
    n: usize,
    terms: BTreeMap<u64, BigInt>,
}

impl ZeonElement {
    fn check_ambient(n: usize) -> Result<(), AlgebraError> {
        if n > MAX_GENERATORS {
            return Err(AlgebraError::TooManyGenerators(n));
        }
        Ok(())
    }

    /// The zero element.
    pub fn zero(n: usize) -> Result<Self, AlgebraError> {
        Self::check_ambient(n)?;
        Ok(Self { n, terms: BTreeMap::new() })
    }

    /// The multiplicative unit `z_∅ = 1`.
    pub fn one(n: usize) -> Result<Self, AlgebraError> {
        Self::scalar(n, 1)
    }

    /// A scalar multiple of the unit blade.
    pub fn scalar(n: usize, value: impl Into<BigInt>) -> Result<Self, AlgebraError> {
        Self::check_ambient(n)?;
        let mut terms = BTreeMap::new();
        let value = value.into();
        if !value.is_zero() {
            terms.insert(0, value);
        }
        Ok(Self { n, terms })
    }

    /// The generator `z_i`.
    pub fn generator(i: usize, n: usize) -> Result<Self, AlgebraError> {
        let index = MultiIndex::singleton(i, n)?;
        Ok(Self::blade(&index, 1))
    }

    /// A single blade `c · z_I`.
    pub fn blade(index: &MultiIndex, coefficient: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let c = coefficient.into();
        if !c.is_zero() {
            terms.insert(index.bits(), c);
        }
        Self { n: index.ambient(), terms }
    }

    /// The grade-one vector `Σ_j row[j] · z_j` built from a matrix row.
    pub fn vector_from_row(row: &[BigInt]) -> Result<Self, AlgebraError> {
        let n = row.len();
        Self::check_ambient(n)?;
        let mut terms = BTreeMap::new();
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(1u64 << j, c.clone());
            }
        }
        Ok(Self { n, terms })
    }

    /// Ambient generator count.
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Stored terms in ascending blade order.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &BigInt)> + '_ {
        self.terms.iter().map(move |(&bits, c)| {
            (
                MultiIndex::from_bits(bits, self.n).expect("stored blade in range"),
                c,
            )
        })
    }

    /// Coefficient of the blade `z_I` (zero when absent).
    pub fn coefficient(&self, index: &MultiIndex) -> BigInt {
        debug_assert_eq!(index.ambient(), self.n, "coefficient ambient mismatch");
        self.terms.get(&index.bits()).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Scalar part, i.e. the coefficient of the empty blade.
    pub fn scalar_part(&self) -> BigInt {
        self.terms.get(&0).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Keeps exactly the terms of grade `k`; out-of-range `k` gives zero.
    pub fn grade_project(&self, k: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(bits, _)| bits.count_ones() as usize == k)
            .map(|(&bits, c)| (bits, c.clone()))
            .collect();
        Self { n: self.n, terms }
    }

    /// Scales every coefficient by `c`.
    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self { n: self.n, terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(&bits, v)| (bits, v * c)).collect();
        Self { n: self.n, terms }
    }

    fn ambient_pair(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::AmbientMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.ambient_pair(other)?;
        let mut terms = self.terms.clone();
        for (&bits, c) in &other.terms {
            accumulate(&mut terms, bits, c.clone());
        }
        Ok(Self { n: self.n, terms })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.ambient_pair(other)?;
        let mut terms = self.terms.clone();
        for (&bits, c) in &other.terms {
            accumulate(&mut terms, bits, -c);
        }
        Ok(Self { n: self.n, terms })
    }

    /// Zeon product: blades with overlapping support annihilate.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.ambient_pair(other)?;
        let mut terms = BTreeMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                accumulate(&mut terms, a | b, ca * cb);
            }
        }
        Ok(Self { n: self.n, terms })
    }
}

fn accumulate(terms: &mut BTreeMap<u64, BigInt>, bits: u64, value: BigInt) {
    if value.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(bits) {
        Entry::Vacant(e) => {
            e.insert(value);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl Add for &ZeonElement {
    type Output = ZeonElement;
    fn add(self, rhs: &ZeonElement) -> ZeonElement {
        self.try_add(rhs).expect("zeon addition: ambient mismatch")
    }
}

impl Sub for &ZeonElement {
    type Output = ZeonElement;
    fn sub(self, rhs: &ZeonElement) -> ZeonElement {
        self.try_sub(rhs).expect("zeon subtraction: ambient mismatch")
    }
}

impl Mul for &ZeonElement {
    type Output = ZeonElement;
    fn mul(self, rhs: &ZeonElement) -> ZeonElement {
        self.try_mul(rhs).expect("zeon product: ambient mismatch")
    }
}

impl Neg for &ZeonElement {
    type Output = ZeonElement;
    fn neg(self) -> ZeonElement {
        let terms = self.terms.iter().map(|(&bits, c)| (bits, -c)).collect();
        ZeonElement { n: self.n, terms }
    }
}

impl fmt::Debug for ZeonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZeonElement({self})")
    }
}

impl fmt::Display for ZeonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&bits, c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if bits == 0 {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                write!(f, "z{{")?;
                for (pos, i) in bit_indices(bits).enumerate() {
                    if pos > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{i}")?;
                }
                write!(f, "}}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zi(i: usize, n: usize) -> ZeonElement {
        ZeonElement::generator(i, n).unwrap()
    }

    #[test]
    fn generator_squares_vanish() {
        // (1 + z0)·(1 + z0) = 1 + 2 z0
        let one = ZeonElement::one(2).unwrap();
        let x = &one + &zi(0, 2);
        let sq = &x * &x;
        let expected = &one + &zi(0, 2).scaled(&BigInt::from(2));
        assert_eq!(sq, expected);
    }

    #[test]
    fn cross_terms_double() {
        // (z0 + z1)^2 = 2 z0 z1
        let x = &zi(0, 3) + &zi(1, 3);
        let sq = &x * &x;
        let i01 = MultiIndex::from_indices([0, 1], 3).unwrap();
        assert_eq!(sq, ZeonElement::blade(&i01, 2));
    }

    #[test]
    fn shared_index_annihilates() {
        // (z0 z1)·(z1 z2) = 0
        let a = ZeonElement::blade(&MultiIndex::from_indices([0, 1], 3).unwrap(), 1);
        let b = ZeonElement::blade(&MultiIndex::from_indices([1, 2], 3).unwrap(), 1);
        assert!((&a * &b).is_zero());
    }

    #[test]
    fn grade_projection_splits_terms() {
        let one = ZeonElement::one(3).unwrap();
        let i01 = MultiIndex::from_indices([0, 1], 3).unwrap();
        let x = &(&one + &zi(0, 3)) + &ZeonElement::blade(&i01, 3);
        assert_eq!(x.grade_project(2), ZeonElement::blade(&i01, 3));
        assert_eq!(x.grade_project(0), one);
        assert!(x.grade_project(3).is_zero());
        // projections over all grades reassemble the element
        let mut back = ZeonElement::zero(3).unwrap();
        for k in 0..=3 {
            back = &back + &x.grade_project(k);
        }
        assert_eq!(back, x);
    }

    #[test]
    fn coefficient_lookup() {
        let i01 = MultiIndex::from_indices([0, 1], 3).unwrap();
        let x = ZeonElement::blade(&i01, 2);
        assert_eq!(x.coefficient(&i01), BigInt::from(2));
        let i0 = MultiIndex::singleton(0, 3).unwrap();
        assert_eq!(x.coefficient(&i0), BigInt::zero());
    }

    #[test]
    fn vector_from_row_places_generators() {
        let row: Vec<BigInt> = [1, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        let v = ZeonElement::vector_from_row(&row).unwrap();
        assert_eq!(v, &zi(0, 3) + &zi(2, 3));
        let zero_row: Vec<BigInt> = vec![BigInt::zero(); 3];
        assert!(ZeonElement::vector_from_row(&zero_row).unwrap().is_zero());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = ZeonElement::one(2).unwrap();
        let b = ZeonElement::one(3).unwrap();
        assert!(matches!(a.try_mul(&b), Err(AlgebraError::AmbientMismatch { .. })));
    }

    #[test]
    fn normalization_drops_cancelled_terms() {
        let x = zi(1, 2);
        let cancelled = &x - &x;
        assert!(cancelled.is_zero());
        assert_eq!(cancelled.num_terms(), 0);
    }
}
