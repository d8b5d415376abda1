use nalgebra::{DVector, Dyn, LU};

use super::{norm2, DenseVector, SparseMatrix};
use crate::error::{Error, Result};

/// Systems up to this order are solved by dense LU factorization.
pub const DENSE_THRESHOLD: usize = 2000;

/// Default relative residual target for iterative solves.
pub const ITERATIVE_TOL: f64 = 1e-10;

const GMRES_RESTART: usize = 50;
const REFINEMENT_STEPS: usize = 3;
// Smallest |u_kk| / max |u_kk| accepted from the LU factors.
const PIVOT_RATIO_FLOOR: f64 = 1e-13;

enum Strategy {
    Dense(LU<f64, Dyn, Dyn>),
    Iterative,
}

/// A square system matrix prepared for repeated solves.
///
/// Small systems are factorized once; larger ones are solved by restarted
/// GMRES capped at `10·n` iterations. Every solution is checked against
/// the requested relative residual before it is returned.
pub struct LinearSolver {
    matrix: SparseMatrix,
    strategy: Strategy,
}

impl LinearSolver {
    pub fn new(matrix: &SparseMatrix) -> Result<Self> {
        Self::with_dense_threshold(matrix, DENSE_THRESHOLD)
    }

    pub fn with_dense_threshold(matrix: &SparseMatrix, threshold: usize) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "linear solve needs a square matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let n = matrix.nrows();
        let strategy = if n <= threshold {
            let lu = matrix.to_dense().lu();
            if n > 0 {
                let u = lu.u();
                let diag = u.diagonal();
                let max = diag.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let min = diag.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
                if max == 0.0 || min / max < PIVOT_RATIO_FLOOR {
                    return Err(Error::Singular(format!(
                        "LU pivot ratio {:.3e} on a {n}x{n} system",
                        if max == 0.0 { 0.0 } else { min / max }
                    )));
                }
            }
            Strategy::Dense(lu)
        } else {
            Strategy::Iterative
        };
        Ok(Self {
            matrix: matrix.clone(),
            strategy,
        })
    }

    pub fn order(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.strategy, Strategy::Dense(_))
    }

    /// Solves `M x = b` to relative residual `tol`.
    pub fn solve(&self, b: &[f64], tol: f64) -> Result<DenseVector> {
        let n = self.order();
        if b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for a {n}x{n} system",
                b.len()
            )));
        }
        let bnorm = norm2(b);
        if bnorm == 0.0 {
            return Ok(vec![0.0; n]);
        }
        let x = match &self.strategy {
            Strategy::Dense(lu) => self.solve_dense(lu, b, bnorm, tol)?,
            Strategy::Iterative => gmres(&self.matrix, b, tol)?,
        };
        let res = self.residual_norm(&x, b)?;
        if !(res <= tol * bnorm) {
            return Err(Error::Singular(format!(
                "relative residual {:.3e} exceeds tolerance {tol:.1e}",
                res / bnorm
            )));
        }
        Ok(x)
    }

    fn solve_dense(
        &self,
        lu: &LU<f64, Dyn, Dyn>,
        b: &[f64],
        bnorm: f64,
        tol: f64,
    ) -> Result<DenseVector> {
        let rhs = DVector::from_column_slice(b);
        let mut x = lu
            .solve(&rhs)
            .ok_or_else(|| Error::Singular("zero pivot in LU factorization".into()))?;
        for _ in 0..REFINEMENT_STEPS {
            let xs = x.as_slice();
            let r: Vec<f64> = self
                .matrix
                .mul_vec(xs)?
                .iter()
                .zip(b)
                .map(|(mx, bi)| bi - mx)
                .collect();
            if norm2(&r) <= tol * bnorm {
                break;
            }
            if let Some(dx) = lu.solve(&DVector::from_vec(r)) {
                x += dx;
            }
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Singular("non-finite solution".into()));
        }
        Ok(x.as_slice().to_vec())
    }

    fn residual_norm(&self, x: &[f64], b: &[f64]) -> Result<f64> {
        let mx = self.matrix.mul_vec(x)?;
        Ok(norm2(
            &mx.iter().zip(b).map(|(a, c)| a - c).collect::<Vec<_>>(),
        ))
    }
}

/// One-shot solve of `M x = b`: dense LU when `n ≤ DENSE_THRESHOLD`,
/// restarted GMRES otherwise. Fails instead of returning a solution whose
/// relative residual exceeds `tol`.
pub fn solve_linear(m: &SparseMatrix, b: &[f64], tol: f64) -> Result<DenseVector> {
    LinearSolver::new(m)?.solve(b, tol)
}

/// Restarted GMRES with modified Gram-Schmidt and Givens rotations.
fn gmres(a: &SparseMatrix, b: &[f64], tol: f64) -> Result<DenseVector> {
    let n = a.nrows();
    let bnorm = norm2(b);
    let cap = 10 * n;
    let restart = GMRES_RESTART.min(n).max(1);
    let mut x = vec![0.0; n];
    let mut iters = 0usize;

    loop {
        let ax = a.mul_vec(&x)?;
        let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        let beta = norm2(&r);
        if beta <= tol * bnorm {
            return Ok(x);
        }
        if iters >= cap {
            return Err(Error::Singular(format!(
                "GMRES stopped at relative residual {:.3e} after {iters} iterations",
                beta / bnorm
            )));
        }

        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        let mut h = vec![vec![0.0; restart]; restart + 1];
        let mut cs = vec![0.0; restart];
        let mut sn = vec![0.0; restart];
        let mut g = vec![0.0; restart + 1];
        g[0] = beta;
        let mut k = 0;

        for j in 0..restart {
            let mut w = a.mul_vec(&basis[j])?;
            for (i, v) in basis.iter().enumerate() {
                let hij: f64 = w.iter().zip(v).map(|(a, b)| a * b).sum();
                h[i][j] = hij;
                w.iter_mut().zip(v).for_each(|(wi, vi)| *wi -= hij * vi);
            }
            let hnext = norm2(&w);
            h[j + 1][j] = hnext;

            for i in 0..j {
                let tmp = cs[i] * h[i][j] + sn[i] * h[i + 1][j];
                h[i + 1][j] = -sn[i] * h[i][j] + cs[i] * h[i + 1][j];
                h[i][j] = tmp;
            }
            let denom = h[j][j].hypot(h[j + 1][j]);
            if denom == 0.0 {
                return Err(Error::Singular(
                    "GMRES breakdown on a singular system".into(),
                ));
            }
            cs[j] = h[j][j] / denom;
            sn[j] = h[j + 1][j] / denom;
            h[j][j] = denom;
            h[j + 1][j] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] *= cs[j];

            iters += 1;
            k = j + 1;
            if g[j + 1].abs() <= 0.5 * tol * bnorm || hnext == 0.0 || iters >= cap {
                break;
            }
            basis.push(w.iter().map(|v| v / hnext).collect());
        }

        let mut y = vec![0.0; k];
        for i in (0..k).rev() {
            let s: f64 = ((i + 1)..k).map(|l| h[i][l] * y[l]).sum();
            y[i] = (g[i] - s) / h[i][i];
        }
        for (yi, v) in y.iter().zip(&basis) {
            x.iter_mut().zip(v).for_each(|(xi, vi)| *xi += yi * vi);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Singular(
                "GMRES produced a non-finite iterate".into(),
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::DenseMatrix;

    fn residual(m: &SparseMatrix, x: &[f64], b: &[f64]) -> f64 {
        let mx = m.mul_vec(x).unwrap();
        norm2(&mx.iter().zip(b).map(|(a, c)| a - c).collect::<Vec<_>>()) / norm2(b)
    }

    #[test]
    fn identity_returns_rhs() {
        let b = vec![1.0, -2.0, 3.5];
        let x = solve_linear(&SparseMatrix::identity(3), &b, 1e-12).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn two_by_two_hand_inverse() {
        // inverse of [[1,-a],[-a,1]] is [[1,a],[a,1]]/(1-a^2); row sums 1.2/0.96
        let m =
            SparseMatrix::from_dense(&DenseMatrix::from_row_slice(2, 2, &[1.0, -0.2, -0.2, 1.0]));
        let x = solve_linear(&m, &[1.0, 1.0], 1e-12).unwrap();
        assert!((x[0] - 1.25).abs() < 1e-14 && (x[1] - 1.25).abs() < 1e-14);
    }

    #[test]
    fn singular_is_rejected() {
        let m = SparseMatrix::from_dense(&DenseMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]));
        assert!(matches!(
            solve_linear(&m, &[1.0, 2.0], 1e-10),
            Err(Error::Singular(_))
        ));
        let iterative = LinearSolver::with_dense_threshold(&m, 0).unwrap();
        assert!(iterative.solve(&[1.0, 2.0], 1e-10).is_err());
    }

    #[test]
    fn gmres_matches_dense_on_nonsymmetric_system() {
        // I - 0.3 * (directed ring with chords), diagonally dominant
        let n = 60;
        let mut trip = Vec::new();
        for i in 0..n {
            trip.push((i, i, 1.0));
            trip.push((i, (i + 1) % n, -0.3));
            trip.push((i, (i + 7) % n, -0.2 * ((i % 5) as f64) / 5.0));
        }
        let m = SparseMatrix::from_triplets_summed(n, n, trip).unwrap();
        let b: Vec<f64> = (0..n).map(|i| 1.0 + (i % 3) as f64).collect();
        let dense = solve_linear(&m, &b, 1e-12).unwrap();
        let it = LinearSolver::with_dense_threshold(&m, 10).unwrap();
        assert!(!it.is_dense());
        let x = it.solve(&b, 1e-11).unwrap();
        assert!(residual(&m, &x, &b) <= 1e-11);
        let diff = x
            .iter()
            .zip(&dense)
            .fold(0.0f64, |a, (p, q)| a.max((p - q).abs()));
        assert!(diff < 1e-9, "diff {diff}");
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let x = solve_linear(&SparseMatrix::identity(2), &[0.0, 0.0], 1e-12).unwrap();
        assert_eq!(x, vec![0.0, 0.0]);
    }
}
