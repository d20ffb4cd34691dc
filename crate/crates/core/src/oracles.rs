//! Brute-force enumerators that ground every algebraic count.
//!
//! Each oracle works by direct combinatorial enumeration and is independent
//! of the determinant/permanent kernels and the operator traces it checks.
//! Every oracle carries a hard input cap and refuses larger instances
//! instead of running unboundedly.

use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::Graph;
use crate::index::{bit_indices, k_subsets, MultiIndex};
use crate::linalg::BigCount;

/// Edge cap for spanning-tree enumeration.
pub const SPANNING_TREE_MAX_EDGES: usize = 24;
/// Vertex cap for Hamiltonian-cycle backtracking.
pub const HAMILTONIAN_MAX_VERTICES: usize = 14;
/// Vertex-subset cap for perfect-matching enumeration.
pub const MATCHING_MAX_VERTICES: usize = 16;
/// Vertex-subset cap for cycle-cover enumeration.
pub const CYCLE_COVER_MAX_VERTICES: usize = 10;
/// Vertex cap for k-cycle enumeration.
pub const K_CYCLE_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what}: size {actual} exceeds the oracle limit {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("vertex set over {ambient} elements does not match a graph on {n} vertices")]
    AmbientMismatch { ambient: usize, n: usize },
}

fn check_ambient(g: &Graph, set: &MultiIndex) -> Result<(), OracleError> {
    if set.ambient() != g.n() {
        return Err(OracleError::AmbientMismatch { ambient: set.ambient(), n: g.n() });
    }
    Ok(())
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    let mut nbr = vec![0u64; g.n()];
    for (u, v) in g.edges() {
        nbr[u] |= 1 << v;
        nbr[v] |= 1 << u;
    }
    nbr
}

/// Number of spanning trees by enumerating all (n-1)-edge subsets and
/// keeping those that connect the graph without a cycle.
pub fn count_spanning_trees_bruteforce(g: &Graph) -> Result<BigCount, OracleError> {
    let m = g.edge_count();
    if m > SPANNING_TREE_MAX_EDGES {
        return Err(OracleError::SizeLimit {
            what: "spanning-tree enumeration",
            actual: m,
            limit: SPANNING_TREE_MAX_EDGES,
        });
    }
    let n = g.n();
    if n <= 1 {
        return Ok(BigInt::from(1));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut count = 0u64;
    for subset in k_subsets(m, n - 1) {
        // union-find: a subset is a spanning tree iff no union closes a
        // cycle and one component remains
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut acyclic = true;
        for e in bit_indices(subset) {
            let (u, v) = edges[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                acyclic = false;
                break;
            }
            parent[ru] = rv;
        }
        if acyclic {
            count += 1; // n-1 acyclic edges on n vertices always span
        }
    }
    Ok(BigInt::from(count))
}

/// Number of undirected Hamiltonian cycles, each counted once, by
/// backtracking with the start fixed at vertex 0. Zero for `n < 3`.
pub fn count_hamiltonian_cycles_bruteforce(g: &Graph) -> Result<BigCount, OracleError> {
    let n = g.n();
    if n > HAMILTONIAN_MAX_VERTICES {
        return Err(OracleError::SizeLimit {
            what: "hamiltonian backtracking",
            actual: n,
            limit: HAMILTONIAN_MAX_VERTICES,
        });
    }
    if n < 3 {
        return Ok(BigInt::from(0));
    }
    let nbr = neighbor_masks(g);
    let full = (1u64 << n) - 1;

    fn walk(v: usize, visited: u64, full: u64, nbr: &[u64]) -> u64 {
        if visited == full {
            return u64::from(nbr[v] & 1 != 0); // close back to vertex 0
        }
        let mut total = 0;
        let mut cands = nbr[v] & !visited;
        while cands != 0 {
            let u = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            total += walk(u, visited | (1 << u), full, nbr);
        }
        total
    }

    let directed = walk(0, 1, full, &nbr);
    debug_assert!(directed.is_multiple_of(2), "closed tours pair up by orientation");
    Ok(BigInt::from(directed / 2))
}

/// Number of perfect matchings on the subgraph induced by `verts`,
/// by recursively pairing the lowest unmatched vertex. One for the empty
/// set, zero for odd cardinality.
pub fn count_perfect_matchings(g: &Graph, verts: &MultiIndex) -> Result<BigCount, OracleError> {
    check_ambient(g, verts)?;
    let k = verts.cardinality();
    if k > MATCHING_MAX_VERTICES {
        return Err(OracleError::SizeLimit {
            what: "perfect-matching enumeration",
            actual: k,
            limit: MATCHING_MAX_VERTICES,
        });
    }
    let nbr = neighbor_masks(g);

    fn pair_up(remaining: u64, nbr: &[u64]) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let v = remaining.trailing_zeros() as usize;
        let rest = remaining & !(1 << v);
        let mut total = 0;
        let mut mates = nbr[v] & rest;
        while mates != 0 {
            let u = mates.trailing_zeros() as usize;
            mates &= mates - 1;
            total += pair_up(rest & !(1 << u), nbr);
        }
        total
    }

    Ok(BigInt::from(pair_up(verts.bits(), &nbr)))
}

/// Number of covers of `verts` by disjoint oriented cycles of length at
/// least three, i.e. permutations of the set along graph edges with no
/// fixed points and no transpositions. One for the empty set.
pub fn count_cycle_covers(g: &Graph, verts: &MultiIndex) -> Result<BigCount, OracleError> {
    check_ambient(g, verts)?;
    let k = verts.cardinality();
    if k > CYCLE_COVER_MAX_VERTICES {
        return Err(OracleError::SizeLimit {
            what: "cycle-cover enumeration",
            actual: k,
            limit: CYCLE_COVER_MAX_VERTICES,
        });
    }
    let ids: Vec<usize> = verts.iter().collect();
    let nbr = neighbor_masks(g);
    // adjacency restricted to the induced subgraph, in local indices
    let local: Vec<u32> = ids
        .iter()
        .map(|&v| {
            let mut mask = 0u32;
            for (li, &u) in ids.iter().enumerate() {
                if nbr[v] & (1 << u) != 0 {
                    mask |= 1 << li;
                }
            }
            mask
        })
        .collect();

    fn assign(i: usize, used: u32, image: &mut [usize], local: &[u32]) -> u64 {
        let k = local.len();
        if i == k {
            return 1;
        }
        let mut total = 0;
        let mut cands = local[i] & !used;
        while cands != 0 {
            let t = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            // a transposition would close a 2-cycle
            if t < i && image[t] == i {
                continue;
            }
            image[i] = t;
            total += assign(i + 1, used | (1 << t), image, local);
        }
        total
    }

    let mut image = vec![usize::MAX; k];
    Ok(BigInt::from(assign(0, 0, &mut image, &local)))
}

/// Convolution of cycle covers and perfect matchings over all splits of
/// `verts`: `Σ_{J ⊆ I} X_{I\J} · M_J`. This equals the permanent of the
/// induced adjacency submatrix.
pub fn cycle_matching_covers(g: &Graph, verts: &MultiIndex) -> Result<BigCount, OracleError> {
    check_ambient(g, verts)?;
    let k = verts.cardinality();
    if k > CYCLE_COVER_MAX_VERTICES {
        return Err(OracleError::SizeLimit {
            what: "cycle-matching enumeration",
            actual: k,
            limit: CYCLE_COVER_MAX_VERTICES,
        });
    }
    let bits = verts.bits();
    let n = verts.ambient();
    let mut total = BigInt::from(0);
    // iterate all submasks of `bits`, including 0 and bits itself
    let mut sub = bits;
    loop {
        let matched = MultiIndex::from_bits(sub, n).expect("submask in range");
        let cycled = MultiIndex::from_bits(bits & !sub, n).expect("submask in range");
        let matchings = count_perfect_matchings(g, &matched)?;
        if !matchings.eq(&BigInt::from(0)) {
            total += count_cycle_covers(g, &cycled)? * matchings;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
    Ok(total)
}

/// Number of undirected k-cycles in the graph, each counted once.
/// Zero for `k < 3`.
pub fn enumerate_k_cycles(g: &Graph, k: usize) -> Result<BigCount, OracleError> {
    let n = g.n();
    if n > K_CYCLE_MAX_VERTICES {
        return Err(OracleError::SizeLimit {
            what: "k-cycle enumeration",
            actual: n,
            limit: K_CYCLE_MAX_VERTICES,
        });
    }
    if k < 3 || k > n {
        return Ok(BigInt::from(0));
    }
    let nbr = neighbor_masks(g);

    // Each cycle is rooted at its minimum vertex and traced in both
    // directions, so the raw count is twice the answer.
    fn extend(v: usize, root: usize, visited: u64, left: usize, nbr: &[u64]) -> u64 {
        if left == 0 {
            return u64::from(nbr[v] & (1 << root) != 0);
        }
        let mut total = 0;
        let mut cands = nbr[v] & !visited;
        while cands != 0 {
            let u = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if u <= root {
                continue;
            }
            total += extend(u, root, visited | (1 << u), left - 1, nbr);
        }
        total
    }

    let mut doubled = 0u64;
    for root in 0..n {
        doubled += extend(root, root, 1 << root, k - 1, &nbr);
    }
    debug_assert!(doubled.is_multiple_of(2));
    Ok(BigInt::from(doubled / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(g: &Graph) -> MultiIndex {
        MultiIndex::full(g.n()).unwrap()
    }

    #[test]
    fn spanning_trees_of_small_graphs() {
        assert_eq!(count_spanning_trees_bruteforce(&Graph::complete(3)).unwrap(), BigInt::from(3));
        assert_eq!(count_spanning_trees_bruteforce(&Graph::path(4)).unwrap(), BigInt::from(1));
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(count_spanning_trees_bruteforce(&two_k2).unwrap(), BigInt::from(0));
        assert_eq!(count_spanning_trees_bruteforce(&Graph::edgeless(1)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn cayley_counts_for_complete_graphs() {
        for n in 2..=6usize {
            let expect = BigInt::from((n as u64).pow(n as u32 - 2));
            assert_eq!(count_spanning_trees_bruteforce(&Graph::complete(n)).unwrap(), expect);
        }
    }

    #[test]
    fn cycles_have_n_trees_and_one_hamiltonian_cycle() {
        for n in 3..=10usize {
            let c = Graph::cycle(n);
            assert_eq!(count_spanning_trees_bruteforce(&c).unwrap(), BigInt::from(n as u64));
            assert_eq!(count_hamiltonian_cycles_bruteforce(&c).unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn hamiltonian_counts() {
        assert_eq!(count_hamiltonian_cycles_bruteforce(&Graph::complete(4)).unwrap(), BigInt::from(3));
        assert_eq!(count_hamiltonian_cycles_bruteforce(&Graph::complete(5)).unwrap(), BigInt::from(12));
        assert_eq!(count_hamiltonian_cycles_bruteforce(&Graph::petersen()).unwrap(), BigInt::from(0));
        assert_eq!(count_hamiltonian_cycles_bruteforce(&Graph::complete(2)).unwrap(), BigInt::from(0));
    }

    #[test]
    fn matchings() {
        let k4 = Graph::complete(4);
        assert_eq!(count_perfect_matchings(&k4, &full(&k4)).unwrap(), BigInt::from(3));
        let empty = MultiIndex::empty(4).unwrap();
        assert_eq!(count_perfect_matchings(&k4, &empty).unwrap(), BigInt::from(1));
        let odd = MultiIndex::from_indices([0, 1, 2], 4).unwrap();
        assert_eq!(count_perfect_matchings(&k4, &odd).unwrap(), BigInt::from(0));
    }

    #[test]
    fn cycle_covers() {
        let k3 = Graph::complete(3);
        assert_eq!(count_cycle_covers(&k3, &full(&k3)).unwrap(), BigInt::from(2));
        let empty = MultiIndex::empty(3).unwrap();
        assert_eq!(count_cycle_covers(&k3, &empty).unwrap(), BigInt::from(1));
        for bits in 1u64..7 {
            if bits.count_ones() < 3 {
                let idx = MultiIndex::from_bits(bits, 3).unwrap();
                assert_eq!(count_cycle_covers(&k3, &idx).unwrap(), BigInt::from(0));
            }
        }
    }

    #[test]
    fn cycle_matching_convolution_values() {
        let k3 = Graph::complete(3);
        assert_eq!(cycle_matching_covers(&k3, &full(&k3)).unwrap(), BigInt::from(2));
        let k4 = Graph::complete(4);
        // six oriented 4-cycles plus three perfect matchings
        assert_eq!(cycle_matching_covers(&k4, &full(&k4)).unwrap(), BigInt::from(9));
        let empty = MultiIndex::empty(4).unwrap();
        assert_eq!(cycle_matching_covers(&k4, &empty).unwrap(), BigInt::from(1));
    }

    #[test]
    fn k_cycle_counts() {
        assert_eq!(enumerate_k_cycles(&Graph::complete(4), 3).unwrap(), BigInt::from(4));
        assert_eq!(enumerate_k_cycles(&Graph::cycle(5), 4).unwrap(), BigInt::from(0));
        assert_eq!(enumerate_k_cycles(&Graph::cycle(5), 5).unwrap(), BigInt::from(1));
        assert_eq!(enumerate_k_cycles(&Graph::complete(5), 2).unwrap(), BigInt::from(0));
    }

    #[test]
    fn size_limits_enforced() {
        let big = Graph::complete(8); // 28 edges
        assert!(matches!(
            count_spanning_trees_bruteforce(&big),
            Err(OracleError::SizeLimit { .. })
        ));
        let wide = Graph::edgeless(15);
        assert!(matches!(
            count_hamiltonian_cycles_bruteforce(&wide),
            Err(OracleError::SizeLimit { .. })
        ));
        let tall = Graph::edgeless(11);
        assert!(matches!(
            count_cycle_covers(&tall, &MultiIndex::full(11).unwrap()),
            Err(OracleError::SizeLimit { .. })
        ));
    }

    #[test]
    fn counts_are_relabeling_invariant() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let perm = [3usize, 5, 0, 2, 4, 1];
        let h = g.relabeled(&perm).unwrap();
        assert_eq!(
            count_spanning_trees_bruteforce(&g).unwrap(),
            count_spanning_trees_bruteforce(&h).unwrap()
        );
        assert_eq!(
            count_hamiltonian_cycles_bruteforce(&g).unwrap(),
            count_hamiltonian_cycles_bruteforce(&h).unwrap()
        );
        assert_eq!(
            count_perfect_matchings(&g, &full(&g)).unwrap(),
            count_perfect_matchings(&h, &full(&h)).unwrap()
        );
        assert_eq!(
            count_cycle_covers(&g, &full(&g)).unwrap(),
            count_cycle_covers(&h, &full(&h)).unwrap()
        );
        for k in 3..=6 {
            assert_eq!(
                enumerate_k_cycles(&g, k).unwrap(),
                enumerate_k_cycles(&h, k).unwrap()
            );
        }
    }
}
