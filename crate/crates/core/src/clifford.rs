//! The Euclidean Clifford algebra: anticommuting generators `g_i` with
//! `g_i^2 = 1`.
//!
//! Blades are ordered products `g_I = Π_{i∈I} g_i` with `I` ascending. The
//! product of two blades is `±g_{I Δ J}` (symmetric difference): repeated
//! generators contract to `+1` and the sign counts the transpositions needed
//! to interleave the two ascending sequences. Coefficients are exact
//! integers; zero coefficients are never stored.
//!
//! The vertex vectors used by the graph operators are plain generator
//! combinations `Σ_j b_j g_j` with no `1/√2` normalization, so the
//! top-grade coefficient of a product of row vectors is exactly an integer
//! minor determinant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::index::{bit_indices, AlgebraError, MultiIndex, MAX_GENERATORS};

/// Sign of the blade product `g_A · g_B`, i.e. the parity of
/// `#{(i, j) : i ∈ A, j ∈ B, i > j}`.
///
/// Shifting `A` down `k` places and intersecting with `B` counts the pairs
/// at distance exactly `k`, so summing popcounts over all shifts counts
/// every inversion once.
pub(crate) fn blade_product_sign(a: u64, b: u64) -> i32 {
    let mut shifted = a >> 1;
    let mut swaps = 0u32;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An exact element of the Euclidean Clifford algebra on `n` generators.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement {
    n: usize,
    terms: BTreeMap<u64, BigInt>,
}

impl CliffordElement {
    fn check_ambient(n: usize) -> Result<(), AlgebraError> {
        if n > MAX_GENERATORS {
            return Err(AlgebraError::TooManyGenerators(n));
        }
        Ok(())
    }

    pub fn zero(n: usize) -> Result<Self, AlgebraError> {
        Self::check_ambient(n)?;
        Ok(Self { n, terms: BTreeMap::new() })
    }

    pub fn one(n: usize) -> Result<Self, AlgebraError> {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, value: impl Into<BigInt>) -> Result<Self, AlgebraError> {
        Self::check_ambient(n)?;
        let mut terms = BTreeMap::new();
        let value = value.into();
        if !value.is_zero() {
            terms.insert(0, value);
        }
        Ok(Self { n, terms })
    }

    /// The generator `g_i`.
    pub fn generator(i: usize, n: usize) -> Result<Self, AlgebraError> {
        let index = MultiIndex::singleton(i, n)?;
        Ok(Self::blade(&index, 1))
    }

    /// A single blade `c · g_I`.
    pub fn blade(index: &MultiIndex, coefficient: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let c = coefficient.into();
        if !c.is_zero() {
            terms.insert(index.bits(), c);
        }
        Self { n: index.ambient(), terms }
    }

    /// The grade-one vector `Σ_j row[j] · g_j` built from a matrix row.
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

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &BigInt)> + '_ {
        self.terms.iter().map(move |(&bits, c)| {
            (
                MultiIndex::from_bits(bits, self.n).expect("stored blade in range"),
                c,
            )
        })
    }

    /// Coefficient of the blade `g_I` (zero when absent).
    pub fn coefficient(&self, index: &MultiIndex) -> BigInt {
        debug_assert_eq!(index.ambient(), self.n, "coefficient ambient mismatch");
        self.terms.get(&index.bits()).cloned().unwrap_or_else(BigInt::zero)
    }

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

    /// Clifford product: signed symmetric-difference convolution of blades.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.ambient_pair(other)?;
        let mut terms = BTreeMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                let mut prod = ca * cb;
                if blade_product_sign(a, b) < 0 {
                    prod = -prod;
                }
                accumulate(&mut terms, a ^ b, prod);
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

impl Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        self.try_add(rhs).expect("clifford addition: ambient mismatch")
    }
}

impl Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        self.try_sub(rhs).expect("clifford subtraction: ambient mismatch")
    }
}

impl Mul for &CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        self.try_mul(rhs).expect("clifford product: ambient mismatch")
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        let terms = self.terms.iter().map(|(&bits, c)| (bits, -c)).collect();
        CliffordElement { n: self.n, terms }
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffordElement({self})")
    }
}

impl fmt::Display for CliffordElement {
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
                write!(f, "g{{")?;
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
