use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::SparseMatrix;
use crate::error::{Error, Result};

pub const POWER_TOL: f64 = 1e-8;
pub const POWER_MAX_ITER: usize = 10_000;

/// Spectral radius of a nonnegative square matrix.
///
/// The matrix is split into the strongly connected components of its
/// nonzero pattern; in that ordering it is block upper-triangular, so
/// ρ(M) is the largest radius among the irreducible diagonal blocks. A
/// trivial component contributes its diagonal entry, which makes nilpotent
/// matrices (acyclic patterns) come out as exactly 0. Each nontrivial block
/// runs power iteration from the all-ones vector, shifted by the running
/// estimate so that periodic blocks still converge, and stops once the
/// Collatz–Wielandt bounds `min (Mx)_i/x_i ≤ ρ ≤ max (Mx)_i/x_i` agree to
/// relative tolerance `tol`.
pub fn spectral_radius(m: &SparseMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "spectral radius of a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    if !m.is_nonnegative() {
        return Err(Error::InvalidMatrix(
            "spectral radius by power iteration needs a nonnegative matrix".into(),
        ));
    }
    let m = m.drop_zeros();
    let n = m.nrows();
    if m.nnz() == 0 {
        return Ok(0.0);
    }

    let mut graph = DiGraph::<(), ()>::with_capacity(n, m.nnz());
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (r, c, _) in m.iter() {
        graph.add_edge(nodes[r], nodes[c], ());
    }

    let mut rho = 0.0f64;
    for component in tarjan_scc(&graph) {
        let idx: Vec<usize> = component.iter().map(|v| v.index()).collect();
        let block_rho = if idx.len() == 1 {
            m.get(idx[0], idx[0])
        } else {
            irreducible_radius(&m.principal_submatrix(&idx), tol, max_iter)?
        };
        rho = rho.max(block_rho);
    }
    Ok(rho)
}

/// [`spectral_radius`] with the crate defaults (tol 1e-8, 10000 iterations).
pub fn spectral_radius_default(m: &SparseMatrix) -> Result<f64> {
    spectral_radius(m, POWER_TOL, POWER_MAX_ITER)
}

fn irreducible_radius(p: &SparseMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    let n = p.nrows();
    let mut x = vec![1.0; n];
    let mut estimate = 0.0;
    for _ in 0..max_iter {
        let y = p.mul_vec(&x)?;
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (yi, xi) in y.iter().zip(&x) {
            let ratio = yi / xi;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        estimate = 0.5 * (lo + hi);
        if hi - lo <= tol * hi {
            return Ok(estimate);
        }
        let mut norm = 0.0f64;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi + estimate * *xi;
            norm = norm.max(*xi);
        }
        x.iter_mut().for_each(|v| *v /= norm);
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        estimate,
    })
}
