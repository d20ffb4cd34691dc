//! Simple undirected graphs and the edge-list text format.
//!
//! Vertices are 0-indexed. The edge-list format is line oriented: blank
//! lines are ignored, lines whose first non-space character is `#` are
//! comments, and every other line holds exactly two whitespace-separated
//! decimal vertex ids. Loops and duplicate edges are rejected rather than
//! repaired.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: loop edge {v} {v} not allowed in a simple graph")]
    LoopEdge { line: usize, v: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {id} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: expected two vertex ids, found {found:?}")]
    Malformed { line: usize, found: String },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    InvalidVertex { v: usize, n: usize },
    #[error("index {index} out of range for dimension {size}")]
    IndexOutOfRange { index: usize, size: usize },
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>, // stored with u < v
}

impl Graph {
    /// Builds a graph, validating simplicity and vertex range.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::LoopEdge { line: 0, v: a });
            }
            let v = a.max(b);
            if v >= n {
                return Err(GraphError::InvalidVertex { v, n });
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge { line: 0, u: a.min(b), v: a.max(b) });
            }
        }
        Ok(Self { n, edges: set })
    }

    /// Graph with no edges.
    pub fn edgeless(n: usize) -> Self {
        Self { n, edges: BTreeSet::new() }
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for v in 0..n {
            for u in 0..v {
                edges.insert((u, v));
            }
        }
        Self { n, edges }
    }

    /// Cycle `C_n`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges = (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                (i.min(j), i.max(j))
            })
            .collect();
        Self { n, edges }
    }

    /// Path `P_n` on `n` vertices.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Self { n, edges }
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, five spokes.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Self::new(10, edges).expect("petersen edges are simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// 0/1 adjacency matrix; symmetric with zero diagonal.
    pub fn adjacency(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            m.set(u, v, BigInt::from(1));
            m.set(v, u, BigInt::from(1));
        }
        m
    }

    /// Combinatorial Laplacian `L = D - A`.
    pub fn laplacian(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.n);
        for v in 0..self.n {
            m.set(v, v, BigInt::from(self.degree(v) as i64));
        }
        for &(u, v) in &self.edges {
            m.set(u, v, BigInt::from(-1));
            m.set(v, u, BigInt::from(-1));
        }
        m
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Image of the graph under a vertex relabeling; `perm[v]` is the new
    /// label of `v` and must be a permutation of `0..n`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidVertex { v: perm.len(), n: self.n });
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Self::new(self.n, edges)
    }

    /// Renders the edge list in the format accepted by [`parse_edge_list`].
    /// The vertex count is recorded as a comment; parsing it back needs an
    /// explicit override when trailing vertices are isolated.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# vertices: {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Parses the edge-list format. With `vertices_override` the vertex count is
/// fixed up front and every id must stay below it; otherwise the count is
/// one past the largest id seen (zero for empty input).
pub fn parse_edge_list(text: &str, vertices_override: Option<usize>) -> Result<Graph, GraphError> {
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut max_id: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(GraphError::Malformed { line, found: trimmed.to_string() });
            }
        };
        let parse = |tok: &str| -> Result<usize, GraphError> {
            tok.parse::<usize>()
                .map_err(|_| GraphError::Malformed { line, found: tok.to_string() })
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u == v {
            return Err(GraphError::LoopEdge { line, v: u });
        }
        if let Some(n) = vertices_override {
            let worst = u.max(v);
            if worst >= n {
                return Err(GraphError::VertexOutOfRange { line, id: worst, n });
            }
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u.max(v))));
        if !edges.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge { line, u: u.min(v), v: u.max(v) });
        }
    }
    let n = vertices_override.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    Ok(Graph { n, edges })
}
