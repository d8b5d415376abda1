//! Edge-level route through the weighted line graph.
//!
//! Everything is read off `V = B^∘1/2` bracketed by `Lᵀ√Z` and `√Z R`:
//! walk counts, nonbacktracking walk sums, general `f`-centralities and the
//! full generating function `Φ(t)`. Centralities are matrix-free; `(I − tV)`
//! is never inverted.

mod series;

pub use series::CoefficientSeries;

use crate::error::{Error, Result};
use crate::graph::LineGraphDecomposition;
use crate::sparse::{
    norm2, spectral_radius_default, DenseMatrix, DenseVector, LinearSolver, SparseMatrix,
};

/// Hard cap on Taylor terms for the exponential kind.
pub const MAX_SERIES_ORDER: usize = 10_000;

/// Inflation applied to the power-iteration estimate of `ρ` when choosing
/// the exponential truncation order.
const RHO_INFLATION: f64 = 1.1;

fn bracket(d: &LineGraphDecomposition, inner: &SparseMatrix) -> Result<SparseMatrix> {
    let sz = d.sqrt_weights();
    let left = d.source().transpose().matmul(&sz)?;
    let right = sz.matmul(d.target())?;
    left.matmul(inner)?.matmul(&right)
}

fn matrix_power(m: &SparseMatrix, k: usize) -> Result<SparseMatrix> {
    let mut out = SparseMatrix::identity(m.nrows());
    for _ in 0..k {
        out = out.matmul(m)?;
    }
    Ok(out)
}

/// `Lᵀ√Z (W^∘1/2)ᵏ √Z R`, which equals `A^{k+1}`.
pub fn project_walk_counts(d: &LineGraphDecomposition, k: usize) -> Result<SparseMatrix> {
    bracket(d, &matrix_power(&d.line_sqrt(), k)?)
}

/// `Lᵀ√Z Vᵏ √Z R`, which equals `p_{k+1}(A)`.
pub fn project_pk(d: &LineGraphDecomposition, k: usize) -> Result<SparseMatrix> {
    bracket(d, &matrix_power(d.v(), k)?)
}

/// `1/ρ(V)`, infinite when `V` is nilpotent.
pub fn convergence_radius(d: &LineGraphDecomposition) -> Result<f64> {
    let rho = spectral_radius_default(d.v())?;
    Ok(if rho == 0.0 { f64::INFINITY } else { 1.0 / rho })
}

/// `y ≈ ∂f(tM) w`. Computes `ρ(M)` first; see
/// [`apply_partial_f_with_radius`] to reuse a known value.
pub fn apply_partial_f(
    series: &CoefficientSeries,
    m: &SparseMatrix,
    t: f64,
    w: &[f64],
    tol: f64,
) -> Result<DenseVector> {
    let rho = spectral_radius_default(m)?;
    apply_partial_f_with_radius(series, m, t, w, tol, rho)
}

/// `y ≈ ∂f(tM) w` given `rho = ρ(M)`.
///
/// Resolvent: solves `(I − tM) y = w`. Exponential: truncated Taylor
/// series of `(eˣ−1)/x` with the order fixed a priori from `t·ρ`. Custom:
/// the finite series itself, accepted only when its declared tail bound is
/// within `tol`.
pub fn apply_partial_f_with_radius(
    series: &CoefficientSeries,
    m: &SparseMatrix,
    t: f64,
    w: &[f64],
    tol: f64,
    rho: f64,
) -> Result<DenseVector> {
    if !m.is_square() || m.nrows() != w.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator applied to a vector of length {}",
            m.nrows(),
            m.ncols(),
            w.len()
        )));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "t = {t} must be finite and nonnegative"
        )));
    }
    let r = series.radius();
    if !(t * rho < r) {
        return Err(Error::OutsideRadius {
            t,
            limit: if rho == 0.0 { f64::INFINITY } else { r / rho },
            what: format!("the {series} series"),
        });
    }
    match series {
        CoefficientSeries::Resolvent => {
            let system = SparseMatrix::identity(m.nrows()).linear_combination(1.0, m, -t)?;
            LinearSolver::new(&system)?.solve(w, tol)
        }
        CoefficientSeries::Exponential => {
            let order = series::exponential_order(t * rho * RHO_INFLATION, tol, MAX_SERIES_ORDER)?;
            let wnorm = norm2(w);
            let mut y = w.to_vec();
            let mut term = w.to_vec();
            let mut k = 1;
            // the a-priori order can undershoot for non-normal M; keep going
            // while the last term still matters
            while k <= order || (norm2(&term) > tol * wnorm && k <= MAX_SERIES_ORDER) {
                term = m.mul_vec(&term)?;
                let scale = t / (k + 1) as f64;
                term.iter_mut().for_each(|v| *v *= scale);
                y.iter_mut().zip(&term).for_each(|(a, b)| *a += b);
                k += 1;
            }
            if norm2(&term) > tol * wnorm {
                return Err(Error::Truncation(format!(
                    "exponential series did not settle within {MAX_SERIES_ORDER} terms"
                )));
            }
            Ok(y)
        }
        CoefficientSeries::Custom {
            coefficients,
            tail_bound,
            ..
        } => {
            if *tail_bound > tol {
                return Err(Error::Truncation(format!(
                    "declared tail bound {tail_bound:.3e} exceeds tolerance {tol:.1e}"
                )));
            }
            // Horner on c_1 + c_2 x + … + c_K x^{K−1}
            let mut y = vec![0.0; w.len()];
            for c in coefficients[1..].iter().rev() {
                let my = m.mul_vec(&y)?;
                for ((yi, myi), wi) in y.iter_mut().zip(&my).zip(w) {
                    *yi = t * myi + c * wi;
                }
            }
            Ok(y)
        }
    }
}

/// A validated request for an edge-route centrality.
#[derive(Debug, Clone)]
pub struct EdgeCentralityPlan {
    pub decomposition: LineGraphDecomposition,
    pub series: CoefficientSeries,
    pub t: f64,
    /// `ρ(V)`.
    pub rho_v: f64,
    pub tol: f64,
}

impl EdgeCentralityPlan {
    /// Computes `ρ(V)` and checks `t·ρ(V) < r`.
    pub fn new(
        decomposition: LineGraphDecomposition,
        series: CoefficientSeries,
        t: f64,
        tol: f64,
    ) -> Result<Self> {
        let rho_v = spectral_radius_default(decomposition.v())?;
        Self::with_radius(decomposition, series, t, tol, rho_v)
    }

    pub fn with_radius(
        decomposition: LineGraphDecomposition,
        series: CoefficientSeries,
        t: f64,
        tol: f64,
        rho_v: f64,
    ) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "t = {t} must be finite and nonnegative"
            )));
        }
        if !(t * rho_v < series.radius()) {
            return Err(Error::OutsideRadius {
                t,
                limit: series.radius() / rho_v,
                what: format!("the {series} centrality"),
            });
        }
        Ok(Self {
            decomposition,
            series,
            t,
            rho_v,
            tol,
        })
    }

    /// `t` limit for this series, `r/ρ(V)`.
    pub fn t_limit(&self) -> f64 {
        if self.rho_v == 0.0 {
            f64::INFINITY
        } else {
            self.series.radius() / self.rho_v
        }
    }
}

/// `v = c₀𝟏 + t Lᵀ√Z ∂f(tV) √Z R 𝟏`.
pub fn edge_centrality(plan: &EdgeCentralityPlan) -> Result<DenseVector> {
    let d = &plan.decomposition;
    let sw = d.sqrt_weight_vector();
    // √Z R 𝟏: every edge has exactly one target
    let y = apply_partial_f_with_radius(&plan.series, d.v(), plan.t, &sw, plan.tol, plan.rho_v)?;
    let mut v = vec![plan.series.c0(); d.n()];
    for ((e, yi), s) in d.edges().iter().zip(&y).zip(&sw) {
        v[e.src] += plan.t * s * yi;
    }
    Ok(v)
}

/// Dense `Φ(t) = I + t Lᵀ√Z (I − tV)⁻¹ √Z R`, one solve per node column.
pub fn phi_via_linegraph(d: &LineGraphDecomposition, t: f64) -> Result<DenseMatrix> {
    phi_via_linegraph_tol(d, t, 1e-12)
}

pub fn phi_via_linegraph_tol(d: &LineGraphDecomposition, t: f64, tol: f64) -> Result<DenseMatrix> {
    let radius = convergence_radius(d)?;
    if !(t >= 0.0 && t < radius) {
        return Err(Error::OutsideRadius {
            t,
            limit: radius,
            what: "the line-graph generating function".into(),
        });
    }
    let n = d.n();
    let mut phi = DenseMatrix::identity(n, n);
    if d.m() == 0 {
        return Ok(phi);
    }
    let system = SparseMatrix::identity(d.m()).linear_combination(1.0, d.v(), -t)?;
    let solver = LinearSolver::new(&system)?;
    let sw = d.sqrt_weight_vector();
    let edges = d.edges();
    for j in 0..n {
        let rhs: Vec<f64> = edges
            .iter()
            .zip(&sw)
            .map(|(e, s)| if e.dst == j { *s } else { 0.0 })
            .collect();
        if rhs.iter().all(|&v| v == 0.0) {
            continue;
        }
        let y = solver.solve(&rhs, tol)?;
        for ((e, yi), s) in edges.iter().zip(&y).zip(&sw) {
            phi[(e.src, j)] += t * s * yi;
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::node::{limiting, nbt_katz, phi_dense, pk_recurrence};

    fn cycle() -> WeightedGraph {
        WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 2.0), (2, 0, 3.0)]).unwrap()
    }

    fn path() -> WeightedGraph {
        WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 0, 1.0), (1, 2, 2.0), (2, 1, 2.0)]).unwrap()
    }

    fn two_node(w: f64) -> WeightedGraph {
        WeightedGraph::from_edges(2, &[(0, 1, w), (1, 0, w)]).unwrap()
    }

    fn mixed() -> WeightedGraph {
        WeightedGraph::from_edges(
            5,
            &[
                (0, 1, 0.5),
                (1, 0, 1.5),
                (1, 2, 1.0),
                (2, 3, 2.0),
                (3, 1, 0.7),
                (3, 4, 1.2),
                (4, 3, 0.3),
                (4, 0, 1.1),
                (2, 4, 0.9),
            ],
        )
        .unwrap()
    }

    fn close(a: &DenseMatrix, b: &DenseMatrix, tol: f64) -> bool {
        (a - b).abs().max() <= tol * a.abs().max().max(1.0)
    }

    #[test]
    fn walk_count_projection() {
        let g = cycle();
        let d = g.line_graph();
        assert!(close(
            &project_walk_counts(&d, 0).unwrap().to_dense(),
            &g.adjacency().to_dense(),
            1e-15
        ));
        let a3 = project_walk_counts(&d, 2).unwrap();
        assert!(close(
            &a3.to_dense(),
            &(DenseMatrix::identity(3, 3) * 6.0),
            1e-14
        ));

        let g = mixed();
        let a = g.adjacency().to_dense();
        let d = g.line_graph();
        let mut power = a.clone();
        for k in 0..4 {
            assert!(close(
                &project_walk_counts(&d, k).unwrap().to_dense(),
                &power,
                1e-13
            ));
            power = &power * &a;
        }
    }

    #[test]
    fn pk_projection_examples() {
        assert_eq!(project_pk(&two_node(3.0).line_graph(), 1).unwrap().nnz(), 0);
        let p2 = project_pk(&path().line_graph(), 1).unwrap();
        assert_eq!(p2.nnz(), 2);
        assert!((p2.get(0, 2) - 2.0).abs() < 1e-14 && (p2.get(2, 0) - 2.0).abs() < 1e-14);
        let g = mixed();
        assert!(close(
            &project_pk(&g.line_graph(), 0).unwrap().to_dense(),
            &g.adjacency().to_dense(),
            1e-15
        ));
    }

    #[test]
    fn pk_projection_matches_recurrence() {
        let g = mixed();
        let d = g.line_graph();
        let p = pk_recurrence(&g.adjacency(), 6).unwrap();
        for k in 0..6 {
            assert!(close(
                &project_pk(&d, k).unwrap().to_dense(),
                &p[k + 1].to_dense(),
                1e-12
            ));
        }
    }

    #[test]
    fn partial_f_examples() {
        let z = SparseMatrix::zeros(3, 3);
        let w = [1.0, 2.0, 3.0];
        for s in [CoefficientSeries::Resolvent, CoefficientSeries::Exponential] {
            assert_eq!(apply_partial_f(&s, &z, 0.7, &w, 1e-12).unwrap(), w.to_vec());
        }
        let m = SparseMatrix::from_triplets(2, 2, vec![(0, 1, 1.0)]).unwrap();
        let y =
            apply_partial_f(&CoefficientSeries::Resolvent, &m, 0.5, &[1.0, 1.0], 1e-12).unwrap();
        assert!((y[0] - 1.5).abs() < 1e-15 && (y[1] - 1.0).abs() < 1e-15);
        let y =
            apply_partial_f(&CoefficientSeries::Exponential, &m, 0.5, &[1.0, 1.0], 1e-12).unwrap();
        assert!((y[0] - 1.25).abs() < 1e-15 && (y[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_f_exponential_matches_dense() {
        let d = mixed().line_graph();
        let t = 0.8;
        let w: Vec<f64> = (0..d.m()).map(|i| 1.0 + i as f64 * 0.1).collect();
        let y = apply_partial_f(&CoefficientSeries::Exponential, d.v(), t, &w, 1e-13).unwrap();
        // (eˣ−1)/x by a long dense Taylor sum
        let vt = d.v().to_dense() * t;
        let mut term = nalgebra::DVector::from_column_slice(&w);
        let mut acc = term.clone();
        for k in 1..80 {
            term = &vt * term / (k + 1) as f64;
            acc += &term;
        }
        for (a, b) in y.iter().zip(acc.iter()) {
            assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn partial_f_rejects_outside_radius() {
        let m = SparseMatrix::from_triplets(2, 2, vec![(0, 1, 2.0), (1, 0, 2.0)]).unwrap();
        assert!(matches!(
            apply_partial_f(&CoefficientSeries::Resolvent, &m, 0.5, &[1.0, 1.0], 1e-10),
            Err(Error::OutsideRadius { .. })
        ));
        let custom = CoefficientSeries::custom(vec![1.0, 1.0], 1.0, 1e-3).unwrap();
        assert!(matches!(
            apply_partial_f(&custom, &m, 0.1, &[1.0, 1.0], 1e-10),
            Err(Error::Truncation(_))
        ));
    }

    #[test]
    fn edge_centrality_examples() {
        let empty = WeightedGraph::from_edges(4, &[]).unwrap();
        for s in [CoefficientSeries::Resolvent, CoefficientSeries::Exponential] {
            let plan = EdgeCentralityPlan::new(empty.line_graph(), s, 0.3, 1e-12).unwrap();
            assert_eq!(edge_centrality(&plan).unwrap(), vec![1.0; 4]);
        }
        let plan = EdgeCentralityPlan::new(
            two_node(2.0).line_graph(),
            CoefficientSeries::Resolvent,
            0.1,
            1e-12,
        )
        .unwrap();
        let v = edge_centrality(&plan).unwrap();
        assert!(v.iter().all(|x| (x - 1.2).abs() < 1e-14));
    }

    #[test]
    fn edge_and_node_katz_agree() {
        let g = mixed();
        let d = g.line_graph();
        let r = convergence_radius(&d).unwrap();
        for frac in [0.25, 0.5, 0.9] {
            let t = frac * r;
            let plan =
                EdgeCentralityPlan::new(d.clone(), CoefficientSeries::Resolvent, t, 1e-13).unwrap();
            let v = edge_centrality(&plan).unwrap();
            let x = nbt_katz(&g.adjacency(), t, 1e-13, Some(r)).unwrap().scores;
            for (a, b) in v.iter().zip(&x) {
                assert!((a - b).abs() < 1e-10 * b.abs(), "t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn radius_examples() {
        assert!(convergence_radius(&path().line_graph())
            .unwrap()
            .is_infinite());
        let r = convergence_radius(&cycle().line_graph()).unwrap();
        assert!((r - 6f64.powf(-1.0 / 3.0)).abs() < 1e-8);
    }

    #[test]
    fn phi_examples() {
        let d = mixed().line_graph();
        assert_eq!(
            phi_via_linegraph(&d, 0.0).unwrap(),
            DenseMatrix::identity(5, 5)
        );

        let g = cycle();
        let t = 0.4;
        let phi = phi_via_linegraph(&g.line_graph(), t).unwrap();
        assert!(close(
            &phi,
            &limiting::phi_reciprocation_free(&g.adjacency(), t).unwrap(),
            1e-12
        ));

        let g = mixed();
        let d = g.line_graph();
        let t = 0.5 * convergence_radius(&d).unwrap();
        let a = phi_via_linegraph(&d, t).unwrap();
        let b = phi_dense(&g.adjacency(), t, None).unwrap();
        assert!(close(&a, &b, 1e-10));
    }

    #[test]
    fn phi_rejects_radius() {
        let d = cycle().line_graph();
        let r = convergence_radius(&d).unwrap();
        assert!(phi_via_linegraph(&d, r * 1.01).is_err());
    }

    #[test]
    fn binarized_radius_and_pruning_bound() {
        let g = mixed();
        let b = g.binarized().line_graph();
        let rv = spectral_radius_default(b.v()).unwrap();
        let rb = spectral_radius_default(b.hashimoto()).unwrap();
        assert_eq!(rv, rb);
        let d = g.line_graph();
        let rv = spectral_radius_default(d.v()).unwrap();
        let rw = spectral_radius_default(&d.line_sqrt()).unwrap();
        assert!(rv <= rw * (1.0 + 1e-8));
    }
}
