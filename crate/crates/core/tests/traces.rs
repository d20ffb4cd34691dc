//! Trace identities: operator traces against the combinatorial oracles.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use fzgraph_core::corpus::{random_connected_graph, SplitMix64};
use fzgraph_core::graph::Graph;
use fzgraph_core::index::{k_subsets, MultiIndex};
use fzgraph_core::linalg::per;
use fzgraph_core::operators::{
    cycle_matching_convolution, fermion_level_trace_normalized, fz_convolution_integral,
    hamiltonian_fz_trace, hamiltonian_goulden_jackson, hamiltonian_liu, hamiltonian_nilpotent,
    nilpotent_trace_power, spanning_tree_count, star_dual_entry, zeon_entry, zeon_level_trace,
    SizePolicy,
};
use fzgraph_core::oracles::{
    count_hamiltonian_cycles_bruteforce, count_spanning_trees_bruteforce, cycle_matching_covers,
    enumerate_k_cycles,
};
use fzgraph_core::linalg::det;

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |flags| {
            let mut edges = Vec::new();
            let mut slot = 0;
            for j in 1..n {
                for i in 0..j {
                    if flags[slot] {
                        edges.push((i, j));
                    }
                    slot += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The level-k zeon trace is the cycle-matching cover sum over all
    /// k-subsets, and each diagonal entry is the induced permanent.
    #[test]
    fn zeon_trace_is_cover_convolution(g in arb_graph(1, 7)) {
        let adjacency = g.adjacency();
        let n = g.n();
        for k in 0..=n {
            let trace = zeon_level_trace(&adjacency, k, SizePolicy::Guarded).unwrap();
            let mut by_covers = BigInt::zero();
            for mask in k_subsets(n, k) {
                let verts = MultiIndex::from_bits(mask, n).unwrap();
                let covers = cycle_matching_covers(&g, &verts).unwrap();
                prop_assert_eq!(&covers, &zeon_entry(&adjacency, &verts, &verts).unwrap());
                by_covers += covers;
            }
            prop_assert_eq!(trace, by_covers);
        }
    }

    /// The star dual is an involution and pairs complements.
    #[test]
    fn star_dual_involution(g in arb_graph(1, 6)) {
        let adjacency = g.adjacency();
        let n = g.n();
        for bits in 0..(1u64 << n) {
            let i = MultiIndex::from_bits(bits, n).unwrap();
            let dual = star_dual_entry(&adjacency, &i, &i).unwrap();
            prop_assert_eq!(&dual, &zeon_entry(&adjacency, &i.complement(), &i.complement()).unwrap());
            let dual_dual = star_dual_entry(&adjacency, &i.complement(), &i.complement()).unwrap();
            prop_assert_eq!(dual_dual, zeon_entry(&adjacency, &i, &i).unwrap());
        }
    }

    /// The trace formula and the algebra-expansion integral compute the
    /// same Hamiltonian count, which matches backtracking.
    #[test]
    fn hamiltonian_routes_agree(g in arb_graph(3, 7)) {
        let oracle = count_hamiltonian_cycles_bruteforce(&g).unwrap();
        let trace = hamiltonian_fz_trace(&g, SizePolicy::Guarded).unwrap();
        prop_assert_eq!(&trace, &oracle);
        prop_assert_eq!(&fz_convolution_integral(&g, SizePolicy::Guarded).unwrap(), &trace);
        prop_assert_eq!(&hamiltonian_liu(&g, SizePolicy::Guarded).unwrap(), &oracle);
        prop_assert_eq!(&hamiltonian_nilpotent(&g, SizePolicy::Guarded).unwrap(), &oracle);
        let directed = hamiltonian_goulden_jackson(&g, 0, SizePolicy::Guarded).unwrap();
        prop_assert_eq!(directed, BigInt::from(2) * oracle);
    }

    /// Fermion trace, edge-subset enumeration and every Laplacian cofactor
    /// agree on the number of spanning trees.
    #[test]
    fn spanning_tree_routes_agree(g in arb_graph(1, 6)) {
        let count = spanning_tree_count(&g).unwrap();
        prop_assert_eq!(&count, &count_spanning_trees_bruteforce(&g).unwrap());
        let lap = g.laplacian();
        for c in 0..g.n() {
            prop_assert_eq!(&count, &det(&lap.deleted(c, c)).unwrap());
        }
        // the normalized trace at level n-1 is integral
        let trace = fermion_level_trace_normalized(&lap, g.n() - 1, SizePolicy::Guarded).unwrap();
        prop_assert!(trace.is_integer());
        prop_assert_eq!(trace.to_integer(), count);
    }

    /// Lower powers of the zeon-weighted adjacency matrix see shorter
    /// cycles: the total coefficient mass of `tr(A^k)` is `2k` per k-cycle.
    #[test]
    fn nilpotent_lower_powers_count_k_cycles(g in arb_graph(3, 7)) {
        for k in 3..=g.n() {
            let trace = nilpotent_trace_power(&g, k, SizePolicy::Guarded).unwrap();
            let total: BigInt = trace.terms().map(|(_, c)| c.clone()).sum();
            let cycles = enumerate_k_cycles(&g, k).unwrap();
            prop_assert_eq!(total, BigInt::from(2 * k as u64) * cycles);
        }
    }
}

#[test]
fn convolution_trace_equals_full_permanent() {
    let mut rng = SplitMix64::new(7);
    for _ in 0..20 {
        let g = random_connected_graph(6, 450, &mut rng);
        let conv = cycle_matching_convolution(&g, SizePolicy::Guarded).unwrap();
        assert_eq!(conv, per(&g.adjacency()).unwrap());
        let full = MultiIndex::full(6).unwrap();
        assert_eq!(conv, cycle_matching_covers(&g, &full).unwrap());
    }
}

#[test]
fn petersen_counts() {
    let petersen = Graph::petersen();
    assert_eq!(spanning_tree_count(&petersen).unwrap(), BigInt::from(2000));
    assert_eq!(
        hamiltonian_fz_trace(&petersen, SizePolicy::Guarded).unwrap(),
        BigInt::zero()
    );
    assert_eq!(
        count_hamiltonian_cycles_bruteforce(&petersen).unwrap(),
        BigInt::zero()
    );
}
