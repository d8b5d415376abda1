//! Weighted directed graphs and their line-graph decomposition.

pub(crate) mod io;
mod line_graph;

pub use io::{
    parse_edge_list, parse_edge_records, read_edge_list, read_matrix_market, write_matrix_market,
    DuplicatePolicy, EdgeRecord, LoopPolicy, NodeOrder, ParseOptions,
};
pub use line_graph::LineGraphDecomposition;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: f64,
}

/// Loop-free directed graph with strictly positive edge weights.
///
/// Edges are kept sorted by `(src, dst)`, which is also the canonical edge
/// labeling used by the line-graph decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    node_labels: Vec<String>,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(node_labels: Vec<String>, mut edges: Vec<Edge>) -> Result<Self> {
        let n = node_labels.len();
        let mut seen_labels = HashSet::with_capacity(n);
        for label in &node_labels {
            if !seen_labels.insert(label.as_str()) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate node label {label:?}"
                )));
            }
        }
        for e in &edges {
            if e.src >= n || e.dst >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) references a node outside 0..{n}",
                    e.src, e.dst
                )));
            }
            if e.src == e.dst {
                return Err(Error::InvalidGraph(format!(
                    "self-loop on node {:?}",
                    node_labels[e.src]
                )));
            }
            if !(e.weight > 0.0) || !e.weight.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "edge {:?} -> {:?} has non-positive or non-finite weight {}",
                    node_labels[e.src], node_labels[e.dst], e.weight
                )));
            }
        }
        edges.sort_by_key(|e| (e.src, e.dst));
        if let Some(w) = edges
            .windows(2)
            .find(|w| (w[0].src, w[0].dst) == (w[1].src, w[1].dst))
        {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {:?} -> {:?}",
                node_labels[w[0].src], node_labels[w[0].dst]
            )));
        }
        Ok(Self { node_labels, edges })
    }

    /// Graph on nodes labeled `"0"`, `"1"`, … from `(src, dst, weight)` tuples.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        Self::new(
            (0..n).map(|i| i.to_string()).collect(),
            edges
                .iter()
                .map(|&(src, dst, weight)| Edge { src, dst, weight })
                .collect(),
        )
    }

    /// Graph whose adjacency matrix is `a` (explicit zeros ignored).
    pub fn from_adjacency(node_labels: Vec<String>, a: &SparseMatrix) -> Result<Self> {
        if a.nrows() != node_labels.len() || a.ncols() != node_labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} adjacency for {} labels",
                a.nrows(),
                a.ncols(),
                node_labels.len()
            )));
        }
        let edges = a
            .iter()
            .filter(|&(_, _, w)| w != 0.0)
            .map(|(src, dst, weight)| Edge { src, dst, weight })
            .collect();
        Self::new(node_labels, edges)
    }

    pub fn n(&self) -> usize {
        self.node_labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn node_labels(&self) -> &[String] {
        &self.node_labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `A_ij = Ω((i, j))` for every edge, zero elsewhere.
    pub fn adjacency(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.n(),
            self.n(),
            self.edges.iter().map(|e| (e.src, e.dst, e.weight)),
        )
        .expect("validated graph has unique in-range edges")
    }

    /// Same graph with every weight set to one.
    pub fn binarized(&self) -> Self {
        Self {
            node_labels: self.node_labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge { weight: 1.0, ..*e })
                .collect(),
        }
    }

    /// True when some edge `(i, j)` has its reverse `(j, i)` in the graph.
    pub fn has_reciprocated_edge(&self) -> bool {
        self.edges
            .iter()
            .any(|e| self.edge_index(e.dst, e.src).is_some())
    }

    /// Position of edge `(src, dst)` in the canonical edge order.
    pub fn edge_index(&self, src: usize, dst: usize) -> Option<usize> {
        self.edges
            .binary_search_by_key(&(src, dst), |e| (e.src, e.dst))
            .ok()
    }

    /// Relabels node `i` as node `perm[i]`, permuting the label list too.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n() {
            return Err(Error::InvalidArgument("permutation length".into()));
        }
        let mut labels = vec![String::new(); self.n()];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.node_labels[i].clone();
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                src: perm[e.src],
                dst: perm[e.dst],
                weight: e.weight,
            })
            .collect();
        Self::new(labels, edges)
    }

    /// Same edges over a larger, relabeled node universe. `index[i]` is the
    /// position of this graph's node `i` in `labels`.
    pub fn embedded(&self, labels: &[String], index: &[usize]) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                src: index[e.src],
                dst: index[e.dst],
                weight: e.weight,
            })
            .collect();
        Self::new(labels.to_vec(), edges)
    }

    pub fn line_graph(&self) -> LineGraphDecomposition {
        LineGraphDecomposition::new(self)
    }
}

/// Adjacency matrix of a validated graph.
pub fn adjacency(g: &WeightedGraph) -> SparseMatrix {
    g.adjacency()
}

/// Line-graph decomposition of a validated graph.
pub fn line_graph(g: &WeightedGraph) -> LineGraphDecomposition {
    g.line_graph()
}
