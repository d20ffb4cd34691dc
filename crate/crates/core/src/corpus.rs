//! Test corpora: exhaustive graph enumeration up to isomorphism, seeded
//! random connected graphs, and a small set of named graphs.
//!
//! The exhaustive enumerator grows graphs one vertex at a time: every
//! isomorphism class on `v+1` vertices contains a vertex whose deletion
//! leaves a class on `v` vertices, so attaching a new vertex to every
//! neighborhood subset of every smaller class covers everything. Duplicates
//! are removed by a canonical form (the minimum edge bitmask over all
//! vertex relabelings).

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Deterministic splitmix64 stream; good enough for corpus sampling and
/// fully reproducible across platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (`bound > 0`).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// Pair slot of the edge `{i, j}` (`i < j`) in the triangular bitmask
/// layout: all pairs inside `{0..j}` come before pairs ending at `j`.
fn pair_slot(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn mask_to_graph(mask: u64, n: usize) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask & (1u64 << pair_slot(i, j)) != 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("triangular mask encodes a simple graph")
}

#[cfg(test)]
fn graph_to_mask(g: &Graph) -> u64 {
    let mut mask = 0u64;
    for (u, v) in g.edges() {
        mask |= 1u64 << pair_slot(u.min(v), u.max(v));
    }
    mask
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// For each permutation, where every pair slot moves to.
fn slot_tables(n: usize) -> Vec<Vec<usize>> {
    permutations(n)
        .into_iter()
        .map(|perm| {
            let mut table = vec![0usize; n * (n - 1) / 2];
            for j in 1..n {
                for i in 0..j {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    table[pair_slot(i, j)] = pair_slot(a, b);
                }
            }
            table
        })
        .collect()
}

fn canonical_mask(mask: u64, tables: &[Vec<usize>]) -> u64 {
    let mut best = u64::MAX;
    for table in tables {
        let mut image = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let slot = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            image |= 1u64 << table[slot];
        }
        if image < best {
            best = image;
        }
    }
    best
}

/// All simple graphs on exactly `n` labeled-free vertices, one canonical
/// representative per isomorphism class. Supports `n <= 7`; the
/// brute-force canonicalization gets unreasonable past that.
pub fn graphs_upto_iso(n: usize) -> Vec<Graph> {
    assert!((1..=7).contains(&n), "exhaustive enumeration supports 1..=7 vertices");
    let mut classes: Vec<u64> = vec![0]; // the single graph on one vertex
    for v in 1..n {
        // attach vertex v to every subset of the previous vertices
        let tables = slot_tables(v + 1);
        let base_slot = v * (v - 1) / 2;
        let mut next: BTreeSet<u64> = BTreeSet::new();
        for &parent in &classes {
            for attach in 0u64..(1 << v) {
                let mut mask = parent;
                for i in 0..v {
                    if attach & (1 << i) != 0 {
                        mask |= 1u64 << (base_slot + i);
                    }
                }
                next.insert(canonical_mask(mask, &tables));
            }
        }
        classes = next.into_iter().collect();
    }
    classes.into_iter().map(|mask| mask_to_graph(mask, n)).collect()
}

/// The connected isomorphism classes on exactly `n` vertices.
pub fn connected_graphs_upto_iso(n: usize) -> Vec<Graph> {
    graphs_upto_iso(n).into_iter().filter(Graph::is_connected).collect()
}

/// A random connected graph on `n >= 1` vertices: each pair becomes an edge
/// with probability `edge_permille / 1000`, resampled until connected.
pub fn random_connected_graph(n: usize, edge_permille: u32, rng: &mut SplitMix64) -> Graph {
    assert!(n >= 1, "need at least one vertex");
    assert!(edge_permille > 0 && edge_permille <= 1000, "edge density must be in 1..=1000");
    for _ in 0..100_000 {
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if rng.next_below(1000) < u64::from(edge_permille) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(n, edges).expect("sampled pairs are simple");
        if g.is_connected() {
            return g;
        }
    }
    panic!("failed to sample a connected graph on {n} vertices at density {edge_permille}/1000");
}

/// Named graphs exercised by the command-line verifier.
pub fn builtin() -> Vec<(&'static str, Graph)> {
    vec![
        ("k2", Graph::complete(2)),
        ("k3", Graph::complete(3)),
        ("k4", Graph::complete(4)),
        ("k5", Graph::complete(5)),
        ("c4", Graph::cycle(4)),
        ("c5", Graph::cycle(5)),
        ("c6", Graph::cycle(6)),
        ("c7", Graph::cycle(7)),
        ("path4", Graph::path(4)),
        (
            "two-triangles",
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap(),
        ),
        ("petersen", Graph::petersen()),
    ]
}
