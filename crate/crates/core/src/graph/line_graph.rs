use super::{Edge, WeightedGraph};
use crate::sparse::SparseMatrix;

/// Edge-level view of a static graph.
///
/// Edges are numbered in the graph's canonical `(src, dst)` order. With
/// `L`/`R` the 0/1 source/target incidence matrices and `Z` the diagonal of
/// edge weights, the adjacency matrix factors as `A = LᵀZR` and the
/// weighted line graph is `W = ZRLᵀZ`, so `W_ef = w_e·w_f` whenever edge `e`
/// ends where edge `f` starts. The Hashimoto matrix `B` is `W` with every
/// backtracking pair (`e = i→j`, `f = j→i`) removed, and `V = B^∘1/2` is the
/// matrix whose powers, bracketed by `√Z`, carry multiplicative walk weights.
#[derive(Debug, Clone)]
pub struct LineGraphDecomposition {
    n: usize,
    edges: Vec<Edge>,
    source: SparseMatrix,
    target: SparseMatrix,
    weights: SparseMatrix,
    line: SparseMatrix,
    hashimoto: SparseMatrix,
    v: SparseMatrix,
}

impl LineGraphDecomposition {
    pub fn new(g: &WeightedGraph) -> Self {
        let n = g.n();
        let edges = g.edges().to_vec();
        let m = edges.len();
        let source = SparseMatrix::from_triplets(
            m,
            n,
            edges.iter().enumerate().map(|(e, x)| (e, x.src, 1.0)),
        )
        .expect("one entry per row");
        let target = SparseMatrix::from_triplets(
            m,
            n,
            edges.iter().enumerate().map(|(e, x)| (e, x.dst, 1.0)),
        )
        .expect("one entry per row");
        let weights = SparseMatrix::diagonal(&edges.iter().map(|e| e.weight).collect::<Vec<_>>());

        let line = weights
            .matmul(&target)
            .and_then(|zr| zr.matmul(&source.transpose()))
            .and_then(|zrl| zrl.matmul(&weights))
            .expect("conforming shapes");
        let hashimoto = hashimoto_from_line(&line);
        let v = hashimoto
            .sqrt_elementwise()
            .expect("line-graph weights are positive");

        debug_assert_eq!(
            source
                .transpose()
                .matmul(&weights)
                .and_then(|lz| lz.matmul(&target))
                .unwrap(),
            g.adjacency()
        );

        Self {
            n,
            edges,
            source,
            target,
            weights,
            line,
            hashimoto,
            v,
        }
    }

    /// Node count of the underlying graph.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count, i.e. the order of the line-graph matrices.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `L`, m×n.
    pub fn source(&self) -> &SparseMatrix {
        &self.source
    }

    /// `R`, m×n.
    pub fn target(&self) -> &SparseMatrix {
        &self.target
    }

    /// `Z`, diagonal m×m.
    pub fn weights(&self) -> &SparseMatrix {
        &self.weights
    }

    /// `W = ZRLᵀZ`.
    pub fn line(&self) -> &SparseMatrix {
        &self.line
    }

    /// `B`.
    pub fn hashimoto(&self) -> &SparseMatrix {
        &self.hashimoto
    }

    /// `V = B^∘1/2`.
    pub fn v(&self) -> &SparseMatrix {
        &self.v
    }

    pub fn weight_vector(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    /// Diagonal of `√Z`.
    pub fn sqrt_weight_vector(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight.sqrt()).collect()
    }

    /// `√Z` as a diagonal matrix.
    pub fn sqrt_weights(&self) -> SparseMatrix {
        SparseMatrix::diagonal(&self.sqrt_weight_vector())
    }

    /// `W^∘1/2`.
    pub fn line_sqrt(&self) -> SparseMatrix {
        self.line.sqrt_elementwise().expect("nonnegative")
    }

    /// Copy with one edge weight replaced in `Z` only, leaving `W`, `B`
    /// and `V` untouched. Used to inject faults into cross-checks.
    pub fn with_tampered_weight(&self, edge: usize, weight: f64) -> Self {
        let mut out = self.clone();
        out.edges[edge].weight = weight;
        out.weights = SparseMatrix::diagonal(&out.weight_vector());
        out
    }
}

/// `B = W − W∘pattern(W∘Wᵀ)`: zero every entry whose transpose partner is
/// also nonzero (the pair `i→j, j→i`), keep the rest.
pub(crate) fn hashimoto_from_line(line: &SparseMatrix) -> SparseMatrix {
    let backtracking = line.hadamard(&line.transpose()).expect("square").pattern();
    line.sub(&line.hadamard(&backtracking).expect("same shape"))
        .expect("same shape")
}

#[cfg(test)]
mod tests {
    use crate::graph::WeightedGraph;

    fn path() -> WeightedGraph {
        WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 0, 1.0), (1, 2, 2.0), (2, 1, 2.0)]).unwrap()
    }

    #[test]
    fn undirected_path_hashimoto() {
        let d = path().line_graph();
        assert_eq!(d.m(), 4);
        // edges: 0:(0,1) 1:(1,0) 2:(1,2) 3:(2,1)
        let b = d.hashimoto();
        assert_eq!(b.nnz(), 2);
        assert_eq!(b.get(0, 2), 2.0);
        assert_eq!(b.get(3, 1), 2.0);
        assert_eq!(d.v().get(0, 2), 2f64.sqrt());
        assert_eq!(d.v().get(3, 1), 2f64.sqrt());
    }

    #[test]
    fn reciprocated_pair_has_empty_hashimoto() {
        let w = 3.0;
        let g = WeightedGraph::from_edges(2, &[(0, 1, w), (1, 0, w)]).unwrap();
        let d = g.line_graph();
        assert_eq!(d.line().get(0, 1), w * w);
        assert_eq!(d.line().get(1, 0), w * w);
        assert_eq!(d.line().nnz(), 2);
        assert_eq!(d.hashimoto().nnz(), 0);
    }

    #[test]
    fn directed_cycle_hashimoto_equals_line_graph() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 2.0), (2, 0, 3.0)]).unwrap();
        let d = g.line_graph();
        assert_eq!(d.hashimoto(), d.line());
        // edges: 0:(0,1) 1:(1,2) 2:(2,0)
        assert_eq!(d.hashimoto().get(0, 1), 2.0);
        assert_eq!(d.hashimoto().get(1, 2), 6.0);
        assert_eq!(d.hashimoto().get(2, 0), 3.0);
    }

    #[test]
    fn factorizations_hold() {
        let g = WeightedGraph::from_edges(
            4,
            &[
                (0, 1, 2.0),
                (1, 0, 0.5),
                (1, 2, 3.0),
                (2, 3, 1.5),
                (3, 1, 4.0),
                (0, 3, 1.0),
            ],
        )
        .unwrap();
        let d = g.line_graph();
        let lt = d.source().transpose();
        let a = lt.matmul(d.weights()).unwrap().matmul(d.target()).unwrap();
        assert_eq!(a, g.adjacency());
        for (r, c, v) in d.line().iter() {
            assert_eq!(d.edges()[r].dst, d.edges()[c].src);
            assert_eq!(v, d.edges()[r].weight * d.edges()[c].weight);
        }
        let sz = d.sqrt_weights();
        let root = sz
            .matmul(d.target())
            .unwrap()
            .matmul(&lt)
            .unwrap()
            .matmul(&sz)
            .unwrap();
        for (r, c, v) in root.iter() {
            assert!((v - d.line_sqrt().get(r, c)).abs() <= 4.0 * f64::EPSILON * v);
        }
        assert_eq!(root.pattern(), d.line_sqrt().pattern());
    }
}
