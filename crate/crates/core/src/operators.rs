//! Operators induced on the fermion and zeon algebras by a graph's
//! adjacency matrix and combinatorial Laplacian, and the counting formulas
//! built from their traces.
//!
//! A matrix acting on the span of the vertices extends to the full algebra
//! by multiplying vertex vectors blade-wise. Grade-preserving matrix
//! elements of the extension are exact minors: determinants on the fermion
//! (Clifford) side, permanents on the zeon side. The counting results are:
//!
//! * the normalized fermion trace of the Laplacian at level `n-1` counts
//!   spanning trees (the matrix-tree theorem in trace form);
//! * the zeon trace of the adjacency matrix at level `k` counts covers of
//!   `k`-subsets by disjoint oriented cycles and matchings;
//! * a signed convolution of the two traces over complementary subsets
//!   counts Hamiltonian cycles, in the spirit of the Goulden-Jackson and
//!   Liu permanent-determinant formulas;
//! * the trace of the n-th power of the zeon-weighted adjacency matrix
//!   recovers the same Hamiltonian count on the top blade.
//!
//! All subset-lattice sums run over disjoint chunks of the lattice in
//! parallel; exact integer arithmetic makes the fold order-independent.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::clifford::CliffordElement;
use crate::graph::{Graph, GraphError};
use crate::index::{bit_indices, k_subsets, low_mask, AlgebraError, MultiIndex, MAX_GENERATORS};
use crate::linalg::{det, per, BigCount, LinalgError};
use crate::matrix::IntMatrix;
use crate::zeon::ZeonElement;

/// Default vertex cap for formulas that sum over all `2^n` subsets.
pub const SUBSET_FORMULA_GUARD: usize = 24;
/// Absolute cap: subset masks live in one machine word.
const SUBSET_FORMULA_HARD_CAP: usize = 63;

/// Whether a subset-lattice formula may exceed the desk-scale guard of
/// [`SUBSET_FORMULA_GUARD`] vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizePolicy {
    /// Refuse graphs beyond [`SUBSET_FORMULA_GUARD`] vertices.
    Guarded,
    /// Run regardless; runtime is the caller's responsibility.
    AllowLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("matrix element grades differ: |I| = {left}, |J| = {right}")]
    GradeMismatch { left: usize, right: usize },
    #[error("level {level} out of range for dimension {n}")]
    LevelOutOfRange { level: usize, n: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("index set over {ambient} elements does not match dimension {n}")]
    AmbientMismatch { ambient: usize, n: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error(
        "{n} vertices exceed the subset-formula guard of {max}; \
         enable the large-input override to proceed"
    )]
    SubsetGuard { n: usize, max: usize },
    #[error("internal consistency failure: {context} produced {value}, not divisible by {divisor}")]
    Inconsistent {
        context: &'static str,
        value: BigInt,
        divisor: BigInt,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn require_square(m: &IntMatrix) -> Result<usize, OperatorError> {
    if !m.is_square() {
        return Err(OperatorError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(m.rows())
}

fn require_ambient(set: &MultiIndex, n: usize) -> Result<(), OperatorError> {
    if set.ambient() != n {
        return Err(OperatorError::AmbientMismatch { ambient: set.ambient(), n });
    }
    Ok(())
}

fn guard_subsets(n: usize, policy: SizePolicy) -> Result<(), OperatorError> {
    let max = match policy {
        SizePolicy::Guarded => SUBSET_FORMULA_GUARD,
        SizePolicy::AllowLarge => SUBSET_FORMULA_HARD_CAP,
    };
    if n > max {
        return Err(OperatorError::SubsetGuard { n, max });
    }
    Ok(())
}

/// Sums `f` over all masks in `0..2^n`, splitting the lattice into disjoint
/// chunks for parallel evaluation.
fn subset_lattice_sum<F>(n: usize, f: F) -> BigInt
where
    F: Fn(u64) -> BigInt + Sync,
{
    const CHUNK_BITS: usize = 14;
    if n <= CHUNK_BITS {
        return (0..1u64 << n).map(f).sum();
    }
    let chunks = 1u64 << (n - CHUNK_BITS);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let base = c << CHUNK_BITS;
            (0..1u64 << CHUNK_BITS).map(|offset| f(base | offset)).sum::<BigInt>()
        })
        .sum()
}

/// Sums `f` over all `k`-subsets of `{0, …, n-1}`.
fn level_sum<F>(n: usize, k: usize, f: F) -> BigInt
where
    F: Fn(u64) -> BigInt + Sync,
{
    let count: BigInt = binomial(BigInt::from(n), BigInt::from(k));
    if count <= BigInt::from(1u64 << 12) {
        return k_subsets(n, k).map(f).sum();
    }
    // large levels: materialize the masks once and fold in parallel
    let masks: Vec<u64> = k_subsets(n, k).collect();
    masks.par_iter().with_min_len(1024).map(|&m| f(m)).sum()
}

/// Fermion-side matrix element: the determinant of the `(I, J)` submatrix.
/// Grades must agree; the empty element is 1.
pub fn fermion_entry(m: &IntMatrix, rows: &MultiIndex, cols: &MultiIndex) -> Result<BigCount, OperatorError> {
    if rows.cardinality() != cols.cardinality() {
        return Err(OperatorError::GradeMismatch {
            left: rows.cardinality(),
            right: cols.cardinality(),
        });
    }
    let sub = m.submatrix(rows, cols)?;
    Ok(det(&sub)?)
}

/// Zeon-side matrix element: the permanent of the `(I, J)` submatrix.
pub fn zeon_entry(m: &IntMatrix, rows: &MultiIndex, cols: &MultiIndex) -> Result<BigCount, OperatorError> {
    if rows.cardinality() != cols.cardinality() {
        return Err(OperatorError::GradeMismatch {
            left: rows.cardinality(),
            right: cols.cardinality(),
        });
    }
    let sub = m.submatrix(rows, cols)?;
    Ok(per(&sub)?)
}

/// Normalized trace of the fermion-side operator at level `k`: the average
/// of `det(M_I)` over all `k`-subsets `I`, as an exact rational.
pub fn fermion_level_trace_normalized(
    m: &IntMatrix,
    k: usize,
    policy: SizePolicy,
) -> Result<BigRational, OperatorError> {
    let n = require_square(m)?;
    if k > n {
        return Err(OperatorError::LevelOutOfRange { level: k, n });
    }
    guard_subsets(n, policy)?;
    let sum = level_sum(n, k, |mask| {
        det(&m.submatrix_masks(mask, mask)).expect("principal submatrix is square")
    });
    Ok(BigRational::new(sum, binomial(BigInt::from(n), BigInt::from(k))))
}

/// Unnormalized trace of the zeon-side operator at level `k`: the sum of
/// `per(M_I)` over all `k`-subsets `I`.
pub fn zeon_level_trace(m: &IntMatrix, k: usize, policy: SizePolicy) -> Result<BigCount, OperatorError> {
    let n = require_square(m)?;
    if k > n {
        return Err(OperatorError::LevelOutOfRange { level: k, n });
    }
    guard_subsets(n, policy)?;
    Ok(level_sum(n, k, |mask| {
        per(&m.submatrix_masks(mask, mask)).expect("principal submatrix is square")
    }))
}

/// Number of spanning trees: the normalized level-`(n-1)` fermion trace of
/// the Laplacian, which averages the `n` principal cofactors. Exact; errors
/// if the cofactor sum is not divisible by `n` (it always is).
///
/// This route is polynomial (it evaluates `n` determinants), so no subset
/// guard applies.
pub fn spanning_tree_count(g: &Graph) -> Result<BigCount, OperatorError> {
    let n = g.n();
    if n == 0 {
        return Err(OperatorError::EmptyGraph);
    }
    if n > MAX_GENERATORS {
        return Err(AlgebraError::TooManyGenerators(n).into());
    }
    let lap = g.laplacian();
    let sum = level_sum(n, n - 1, |mask| {
        det(&lap.submatrix_masks(mask, mask)).expect("principal submatrix is square")
    });
    let (q, r) = sum.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return Err(OperatorError::Inconsistent {
            context: "normalized fermion trace at level n-1",
            value: sum,
            divisor: BigInt::from(n),
        });
    }
    Ok(q)
}

/// Top-level zeon trace of the adjacency matrix: the permanent of `A`,
/// i.e. the total number of covers of the whole vertex set by disjoint
/// oriented cycles and perfect matchings.
pub fn cycle_matching_convolution(g: &Graph, policy: SizePolicy) -> Result<BigCount, OperatorError> {
    zeon_level_trace(&g.adjacency(), g.n(), policy)
}

/// Star-dual matrix element: the zeon entry at the complementary index
/// sets. An involution by construction.
pub fn star_dual_entry(m: &IntMatrix, rows: &MultiIndex, cols: &MultiIndex) -> Result<BigCount, OperatorError> {
    let n = require_square(m)?;
    require_ambient(rows, n)?;
    require_ambient(cols, n)?;
    zeon_entry(m, &rows.complement(), &cols.complement())
}

/// Diagonal weight `(-1)^{|I|} · |I'|`: inclusion-exclusion parity times the
/// complement size. Vanishes on the full set.
pub fn signed_complement_size(index: &MultiIndex) -> i64 {
    let size = (index.ambient() - index.cardinality()) as i64;
    if index.cardinality().is_multiple_of(2) {
        size
    } else {
        -size
    }
}

fn signed_complement_size_mask(mask: u64, n: usize) -> i64 {
    let k = mask.count_ones() as usize;
    let size = (n - k) as i64;
    if k.is_multiple_of(2) {
        size
    } else {
        -size
    }
}

fn checked_cycle_division(
    sum: BigInt,
    n: usize,
    context: &'static str,
) -> Result<BigCount, OperatorError> {
    let divisor = BigInt::from(2 * n as u64);
    let (q, r) = sum.div_rem(&divisor);
    if !r.is_zero() {
        return Err(OperatorError::Inconsistent { context, value: sum, divisor });
    }
    Ok(q)
}

/// Number of undirected Hamiltonian cycles via the fermion-zeon trace:
/// `(1/2n) Σ_J (-1)^{|J|} |J'| · det(A_J) · per(A_{J'})`.
///
/// The determinant/permanent formulas presuppose cycles of length at least
/// three, so graphs with fewer than three vertices report zero directly.
pub fn hamiltonian_fz_trace(g: &Graph, policy: SizePolicy) -> Result<BigCount, OperatorError> {
    let n = g.n();
    if n < 3 {
        return Ok(BigInt::zero());
    }
    guard_subsets(n, policy)?;
    let adj = g.adjacency();
    let all = low_mask(n);
    let sum = subset_lattice_sum(n, |mask| {
        let weight = signed_complement_size_mask(mask, n);
        if weight == 0 {
            return BigInt::zero();
        }
        let d = det(&adj.submatrix_masks(mask, mask)).expect("square");
        if d.is_zero() {
            return BigInt::zero();
        }
        let p = per(&adj.submatrix_masks(all & !mask, all & !mask)).expect("square");
        d * p * BigInt::from(weight)
    });
    checked_cycle_division(sum, n, "fermion-zeon trace")
}

/// Number of undirected Hamiltonian cycles via the permanent-determinant
/// sum `(1/2n) Σ_I (-1)^{n-|I|} |I| · per(A_I) · det(A_{I'})`.
pub fn hamiltonian_liu(g: &Graph, policy: SizePolicy) -> Result<BigCount, OperatorError> {
    let n = g.n();
    if n < 3 {
        return Ok(BigInt::zero());
    }
    guard_subsets(n, policy)?;
    let adj = g.adjacency();
    let all = low_mask(n);
    let sum = subset_lattice_sum(n, |mask| {
        let k = mask.count_ones() as usize;
        if k == 0 {
            return BigInt::zero();
        }
        let p = per(&adj.submatrix_masks(mask, mask)).expect("square");
        if p.is_zero() {
            return BigInt::zero();
        }
        let d = det(&adj.submatrix_masks(all & !mask, all & !mask)).expect("square");
        let signed = if (n - k).is_multiple_of(2) { k as i64 } else { -(k as i64) };
        p * d * BigInt::from(signed)
    });
    checked_cycle_division(sum, n, "permanent-determinant sum")
}

/// Number of *directed* Hamiltonian circuits via the anchored
/// determinant-permanent sum `Σ_{I ⊆ [n]\{c}} (-1)^{|I|} det(A_I) per(A_{I'})`.
///
/// On the symmetric adjacency matrix of an undirected simple graph this is
/// twice the undirected count for `n >= 3`; the value is independent of the
/// anchor `c`.
pub fn hamiltonian_goulden_jackson(
    g: &Graph,
    anchor: usize,
    policy: SizePolicy,
) -> Result<BigCount, OperatorError> {
    let n = g.n();
    if anchor >= n {
        return Err(OperatorError::VertexOutOfRange { v: anchor, n });
    }
    guard_subsets(n, policy)?;
    let adj = g.adjacency();
    let all = low_mask(n);
    // masks over the n-1 positions other than the anchor, spread back out
    let spread = |mask: u64| -> u64 {
        let below = mask & low_mask(anchor);
        let above = (mask >> anchor) << (anchor + 1);
        below | above
    };
    let sum = subset_lattice_sum(n - 1, |small| {
        let mask = spread(small);
        let d = det(&adj.submatrix_masks(mask, mask)).expect("square");
        if d.is_zero() {
            return BigInt::zero();
        }
        let p = per(&adj.submatrix_masks(all & !mask, all & !mask)).expect("square");
        let term = d * p;
        if mask.count_ones().is_multiple_of(2) {
            term
        } else {
            -term
        }
    });
    Ok(sum)
}

/// Adjacency matrix with zeon-generator entries: position `(i, j)` holds
/// the generator of the target vertex `j` when `{i, j}` is an edge.
#[derive(Clone, PartialEq, Eq)]
pub struct NilpotentMatrix {
    n: usize,
    entries: Vec<ZeonElement>,
}

impl NilpotentMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &ZeonElement {
        assert!(i < self.n && j < self.n, "index out of bounds");
        &self.entries[i * self.n + j]
    }
}

impl fmt::Debug for NilpotentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "NilpotentMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                write!(f, "({}) ", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Builds the zeon-weighted adjacency matrix of the graph.
pub fn nilpotent_adjacency(g: &Graph) -> Result<NilpotentMatrix, OperatorError> {
    let n = g.n();
    if n > MAX_GENERATORS {
        return Err(AlgebraError::TooManyGenerators(n).into());
    }
    let zero = ZeonElement::zero(n)?;
    let mut entries = vec![zero; n * n];
    for (u, v) in g.edges() {
        entries[u * n + v] = ZeonElement::generator(v, n)?;
        entries[v * n + u] = ZeonElement::generator(u, n)?;
    }
    Ok(NilpotentMatrix { n, entries })
}

fn zeon_matrix_mul(a: &[ZeonElement], b: &[ZeonElement], n: usize) -> Vec<ZeonElement> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = ZeonElement::zero(n).expect("ambient checked");
            for k in 0..n {
                let left = &a[i * n + k];
                let right = &b[k * n + j];
                if left.is_zero() || right.is_zero() {
                    continue;
                }
                acc = acc.try_add(&left.try_mul(right).expect("same ambient")).expect("same ambient");
            }
            out.push(acc);
        }
    }
    out
}

/// Trace of the `k`-th power of the zeon-weighted adjacency matrix.
///
/// Every surviving term corresponds to a closed `k`-walk with pairwise
/// distinct targets, i.e. a `k`-cycle through the start vertex; at `k = n`
/// the trace collapses to `2n · H_c` times the top blade.
pub fn nilpotent_trace_power(g: &Graph, k: usize, policy: SizePolicy) -> Result<ZeonElement, OperatorError> {
    let n = g.n();
    if n > MAX_GENERATORS {
        return Err(AlgebraError::TooManyGenerators(n).into());
    }
    if k == 0 || k > n {
        return Err(OperatorError::LevelOutOfRange { level: k, n });
    }
    guard_subsets(n, policy)?;
    let base = nilpotent_adjacency(g)?;
    let mut trace = ZeonElement::zero(n)?;
    if k == 1 {
        for i in 0..n {
            trace = trace.try_add(base.entry(i, i))?;
        }
        return Ok(trace);
    }
    // power = base^(k-1), then contract the diagonal of power * base
    let mut power = base.entries.clone();
    for _ in 2..k {
        power = zeon_matrix_mul(&power, &base.entries, n);
    }
    for i in 0..n {
        for j in 0..n {
            let left = &power[i * n + j];
            let right = base.entry(j, i);
            if left.is_zero() || right.is_zero() {
                continue;
            }
            trace = trace.try_add(&left.try_mul(right)?)?;
        }
    }
    Ok(trace)
}

/// Number of undirected Hamiltonian cycles read off the top blade of
/// `tr(A_zeon^n)`, which equals `2n · H_c`.
pub fn hamiltonian_nilpotent(g: &Graph, policy: SizePolicy) -> Result<BigCount, OperatorError> {
    let n = g.n();
    if n < 3 {
        return Ok(BigInt::zero());
    }
    let trace = nilpotent_trace_power(g, n, policy)?;
    let top = trace.coefficient(&MultiIndex::full(n)?);
    if trace.num_terms() > usize::from(!top.is_zero()) {
        return Err(OperatorError::Inconsistent {
            context: "nilpotent trace power has sub-top terms",
            value: top,
            divisor: BigInt::from(2 * n as u64),
        });
    }
    checked_cycle_division(top, n, "nilpotent adjacency trace")
}

/// Number of undirected Hamiltonian cycles by the convolution integral:
/// the same signed sum as [`hamiltonian_fz_trace`], but with every minor
/// obtained by expanding products of row vectors inside the algebras
/// instead of running the elimination and inclusion-exclusion kernels.
///
/// For each subset `J`, the coefficient of the blade `g_J` in the Clifford
/// product of the rows indexed by `J` is paired with the coefficient of the
/// complementary zeon blade in the product of the remaining rows. Columns
/// outside the target support and terms below the running grade can never
/// reach the extracted coefficient, so they are dropped as the product is
/// built.
pub fn fz_convolution_integral(g: &Graph, policy: SizePolicy) -> Result<BigCount, OperatorError> {
    let n = g.n();
    if n < 3 {
        return Ok(BigInt::zero());
    }
    guard_subsets(n, policy)?;
    let adj = g.adjacency();
    let all = low_mask(n);

    let masked_row = |row: usize, keep: u64| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n];
        for j in bit_indices(keep) {
            out[j] = adj.get(row, j).clone();
        }
        out
    };

    let clifford_top = |mask: u64| -> BigInt {
        let mut acc = CliffordElement::one(n).expect("ambient checked");
        for (step, row) in bit_indices(mask).enumerate() {
            let vector = CliffordElement::vector_from_row(&masked_row(row, mask)).expect("ambient checked");
            acc = acc.try_mul(&vector).expect("same ambient").grade_project(step + 1);
            if acc.is_zero() {
                return BigInt::zero();
            }
        }
        acc.coefficient(&MultiIndex::from_bits(mask, n).expect("mask in range"))
    };

    let zeon_top = |mask: u64| -> BigInt {
        let mut acc = ZeonElement::one(n).expect("ambient checked");
        for row in bit_indices(mask) {
            let vector = ZeonElement::vector_from_row(&masked_row(row, mask)).expect("ambient checked");
            acc = acc.try_mul(&vector).expect("same ambient");
            if acc.is_zero() {
                return BigInt::zero();
            }
        }
        acc.coefficient(&MultiIndex::from_bits(mask, n).expect("mask in range"))
    };

    let sum = subset_lattice_sum(n, |mask| {
        let weight = signed_complement_size_mask(mask, n);
        if weight == 0 {
            return BigInt::zero();
        }
        let d = clifford_top(mask);
        if d.is_zero() {
            return BigInt::zero();
        }
        let p = zeon_top(all & !mask);
        d * p * BigInt::from(weight)
    });
    checked_cycle_division(sum, n, "fermion-zeon convolution integral")
}
