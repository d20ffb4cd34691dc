//! Exact graph enumeration through operators induced on fermion and zeon
//! algebras.
//!
//! A matrix attached to a graph (its adjacency matrix or combinatorial
//! Laplacian) acts on the vector space spanned by the vertices. Extending
//! that action multiplicatively to the `2^n`-dimensional Clifford (fermion)
//! and zeon algebras turns classical counting results into operator traces:
//!
//! * spanning trees are the normalized level-`(n-1)` fermion trace of the
//!   Laplacian (matrix-tree theorem in trace form);
//! * covers of vertex subsets by disjoint cycles and matchings are zeon
//!   traces of the adjacency matrix (permanents of principal minors);
//! * Hamiltonian cycles come out of a signed convolution pairing fermion
//!   and zeon traces over complementary subsets, equivalent to the
//!   Goulden-Jackson and Liu determinant-permanent formulas, and also from
//!   the trace of the n-th power of a zeon-weighted adjacency matrix.
//!
//! Everything is exact: coefficients, determinants, permanents and counts
//! are arbitrary-precision integers, and every algebraic route is
//! cross-checked against brute-force combinatorial oracles in the test
//! suite.
//!
//! ```
//! use fzgraph_core::graph::Graph;
//! use fzgraph_core::operators::{self, SizePolicy};
//! use fzgraph_core::oracles;
//!
//! let k4 = Graph::complete(4);
//! let by_trace = operators::hamiltonian_fz_trace(&k4, SizePolicy::Guarded).unwrap();
//! let by_force = oracles::count_hamiltonian_cycles_bruteforce(&k4).unwrap();
//! assert_eq!(by_trace, by_force);
//! assert_eq!(operators::spanning_tree_count(&k4).unwrap(), 16.into());
//! ```

pub mod clifford;
pub mod corpus;
pub mod graph;
pub mod index;
pub mod linalg;
pub mod matrix;
pub mod operators;
pub mod oracles;
pub mod zeon;

pub use clifford::CliffordElement;
pub use graph::{parse_edge_list, Graph, GraphError};
pub use index::{k_subsets, AlgebraError, MultiIndex, MAX_GENERATORS};
pub use linalg::{BigCount, LinalgError};
pub use matrix::IntMatrix;
pub use operators::{NilpotentMatrix, OperatorError, SizePolicy};
pub use oracles::OracleError;
pub use zeon::ZeonElement;
