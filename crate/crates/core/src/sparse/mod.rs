//! Compressed sparse row matrices and the handful of kernels the walk
//! machinery needs: products, Hadamard operations, elementwise maps,
//! diagonal extraction, linear solves and spectral radii.
//!
//! Every operation returns a fresh matrix; nothing is mutated in place, so
//! matrices can be shared freely between threads.

mod solve;
mod spectral;

pub use solve::{solve_linear, LinearSolver, DENSE_THRESHOLD, ITERATIVE_TOL};
pub use spectral::{spectral_radius, spectral_radius_default, POWER_MAX_ITER, POWER_TOL};

use std::ops::Range;

use crate::error::{Error, Result};

pub type DenseVector = Vec<f64>;
pub type DenseMatrix = nalgebra::DMatrix<f64>;

/// Real sparse matrix in CSR layout with sorted, unique column indices per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            indptr: vec![0; nrows + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    /// Square diagonal matrix; zero diagonal entries are not stored.
    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut indptr = Vec::with_capacity(n + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for (i, &d) in diag.iter().enumerate() {
            if d != 0.0 {
                indices.push(i);
                values.push(d);
            }
            indptr.push(indices.len());
        }
        Self {
            nrows: n,
            ncols: n,
            indptr,
            indices,
            values,
        }
    }

    /// Fully populated matrix with every entry equal to one (the 𝟏𝟏ᵀ pattern).
    pub fn ones(nrows: usize, ncols: usize) -> Self {
        let mut indptr = Vec::with_capacity(nrows + 1);
        indptr.push(0);
        let mut indices = Vec::with_capacity(nrows * ncols);
        for _ in 0..nrows {
            indices.extend(0..ncols);
            indptr.push(indices.len());
        }
        let values = vec![1.0; indices.len()];
        Self {
            nrows,
            ncols,
            indptr,
            indices,
            values,
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicate keys,
    /// out-of-range indices and non-finite values are rejected. Explicit
    /// zeros are kept as stored entries.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::build(nrows, ncols, triplets, false)
    }

    /// Like [`SparseMatrix::from_triplets`] but sums values sharing a key.
    pub fn from_triplets_summed<I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::build(nrows, ncols, triplets, true)
    }

    fn build<I>(nrows: usize, ncols: usize, triplets: I, sum: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut trip: Vec<(usize, usize, f64)> = triplets.into_iter().collect();
        for &(r, c, v) in &trip {
            if r >= nrows || c >= ncols {
                return Err(Error::InvalidMatrix(format!(
                    "entry ({r}, {c}) outside a {nrows}x{ncols} matrix"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidMatrix(format!(
                    "non-finite value {v} at ({r}, {c})"
                )));
            }
        }
        trip.sort_by_key(|a| (a.0, a.1));

        let mut indptr = vec![0usize; nrows + 1];
        let mut indices = Vec::with_capacity(trip.len());
        let mut values: Vec<f64> = Vec::with_capacity(trip.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in trip {
            if last == Some((r, c)) {
                if !sum {
                    return Err(Error::InvalidMatrix(format!("duplicate entry ({r}, {c})")));
                }
                *values.last_mut().expect("previous entry") += v;
                continue;
            }
            last = Some((r, c));
            indptr[r + 1] += 1;
            indices.push(c);
            values.push(v);
        }
        for i in 0..nrows {
            indptr[i + 1] += indptr[i];
        }
        Ok(Self {
            nrows,
            ncols,
            indptr,
            indices,
            values,
        })
    }

    /// Converts a dense matrix, dropping zeros.
    pub fn from_dense(dense: &DenseMatrix) -> Self {
        let mut indptr = Vec::with_capacity(dense.nrows() + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for i in 0..dense.nrows() {
            for j in 0..dense.ncols() {
                let v = dense[(i, j)];
                if v != 0.0 {
                    indices.push(j);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Self {
            nrows: dense.nrows(),
            ncols: dense.ncols(),
            indptr,
            indices,
            values,
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.nrows, self.ncols);
        for (r, c, v) in self.iter() {
            out[(r, c)] = v;
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    /// Number of stored entries, explicit zeros included.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        let (cols, vals) = self.row(row);
        match cols.binary_search(&col) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    /// Column indices and values of one row.
    pub fn row(&self, row: usize) -> (&[usize], &[f64]) {
        let span = self.indptr[row]..self.indptr[row + 1];
        (&self.indices[span.clone()], &self.values[span])
    }

    /// Stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nrows).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.ncols + 1];
        for &c in &self.indices {
            counts[c + 1] += 1;
        }
        for j in 0..self.ncols {
            counts[j + 1] += counts[j];
        }
        let indptr = counts.clone();
        let mut next = counts;
        let mut indices = vec![0usize; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        for (r, c, v) in self.iter() {
            let slot = next[c];
            indices[slot] = r;
            values[slot] = v;
            next[c] += 1;
        }
        Self {
            nrows: self.ncols,
            ncols: self.nrows,
            indptr,
            indices,
            values,
        }
    }

    /// Exact sparse product `self · other`; zeros in the result are dropped.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "matmul of {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut acc = vec![0.0; other.ncols];
        let mut touched = vec![false; other.ncols];
        let mut cols: Vec<usize> = Vec::new();
        let mut indptr = Vec::with_capacity(self.nrows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in 0..self.nrows {
            let (acols, avals) = self.row(r);
            for (&k, &a) in acols.iter().zip(avals) {
                if a == 0.0 {
                    continue;
                }
                let (bcols, bvals) = other.row(k);
                for (&c, &b) in bcols.iter().zip(bvals) {
                    if !touched[c] {
                        touched[c] = true;
                        cols.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            cols.sort_unstable();
            for &c in &cols {
                if acc[c] != 0.0 {
                    indices.push(c);
                    values.push(acc[c]);
                }
                acc[c] = 0.0;
                touched[c] = false;
            }
            cols.clear();
            indptr.push(indices.len());
        }
        Ok(Self {
            nrows: self.nrows,
            ncols: other.ncols,
            indptr,
            indices,
            values,
        })
    }

    /// Elementwise product `self ∘ other`.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "hadamard")?;
        self.merge(other, |a, b| match (a, b) {
            (Some(x), Some(y)) => x * y,
            _ => 0.0,
        })
    }

    /// `alpha·self + beta·other`, with exact zeros dropped.
    pub fn linear_combination(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        self.check_same_shape(other, "linear combination")?;
        self.merge(other, |a, b| {
            alpha * a.unwrap_or(0.0) + beta * b.unwrap_or(0.0)
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.linear_combination(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.linear_combination(1.0, other, -1.0)
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{op} of {}x{} and {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(())
    }

    /// Walks the union of both patterns row by row and keeps nonzero results.
    fn merge<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(Option<f64>, Option<f64>) -> f64,
    {
        let mut indptr = Vec::with_capacity(self.nrows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in 0..self.nrows {
            let (ac, av) = self.row(r);
            let (bc, bv) = other.row(r);
            let (mut i, mut j) = (0, 0);
            while i < ac.len() || j < bc.len() {
                let (c, v) = if j >= bc.len() || (i < ac.len() && ac[i] < bc[j]) {
                    i += 1;
                    (ac[i - 1], f(Some(av[i - 1]), None))
                } else if i >= ac.len() || bc[j] < ac[i] {
                    j += 1;
                    (bc[j - 1], f(None, Some(bv[j - 1])))
                } else {
                    i += 1;
                    j += 1;
                    (ac[i - 1], f(Some(av[i - 1]), Some(bv[j - 1])))
                };
                if v != 0.0 {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Ok(Self {
            nrows: self.nrows,
            ncols: self.ncols,
            indptr,
            indices,
            values,
        })
    }

    pub fn scale(&self, alpha: f64) -> Self {
        if alpha == 0.0 {
            return Self::zeros(self.nrows, self.ncols);
        }
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= alpha);
        out
    }

    /// `diag(d) · self`.
    pub fn scale_rows(&self, d: &[f64]) -> Result<Self> {
        if d.len() != self.nrows {
            return Err(Error::DimensionMismatch(format!(
                "row scaling of {} rows by {} factors",
                self.nrows,
                d.len()
            )));
        }
        let mut out = self.clone();
        for r in 0..self.nrows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                out.values[k] *= d[r];
            }
        }
        Ok(out.drop_zeros())
    }

    /// Applies `f` to the stored entries only (valid when `f(0) = 0`).
    /// A non-finite result is reported as an elementwise pole.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Result<Self> {
        let mut out = self.clone();
        for r in 0..self.nrows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let v = f(self.values[k]);
                if !v.is_finite() {
                    return Err(Error::ElementwisePole {
                        row: r,
                        col: self.indices[k],
                        detail: format!("map of {} is {v}", self.values[k]),
                    });
                }
                out.values[k] = v;
            }
        }
        Ok(out.drop_zeros())
    }

    /// Applies `f` to every entry, stored or not, producing a dense matrix.
    pub fn map_dense<F: Fn(f64) -> f64>(&self, f: F) -> Result<DenseMatrix> {
        let dense = self.to_dense();
        let mut out = DenseMatrix::zeros(self.nrows, self.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let v = f(dense[(i, j)]);
                if !v.is_finite() {
                    return Err(Error::ElementwisePole {
                        row: i,
                        col: j,
                        detail: format!("map of {} is {v}", dense[(i, j)]),
                    });
                }
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }

    /// Elementwise nonnegative square root `X^∘1/2`.
    pub fn sqrt_elementwise(&self) -> Result<Self> {
        self.map(|x| if x >= 0.0 { x.sqrt() } else { f64::NAN })
    }

    /// Elementwise power `X^∘h` for `h ≥ 1`; `h = 0` would fill the whole
    /// matrix and is rejected.
    pub fn powi_elementwise(&self, h: i32) -> Result<Self> {
        if h < 1 {
            return Err(Error::InvalidArgument(format!(
                "elementwise power {h} is not sparse"
            )));
        }
        self.map(|x| x.powi(h))
    }

    /// 0/1 matrix with a one at every nonzero entry.
    pub fn pattern(&self) -> Self {
        let mut out = self.drop_zeros();
        out.values.iter_mut().for_each(|v| *v = 1.0);
        out
    }

    pub fn drop_zeros(&self) -> Self {
        if self.values.iter().all(|&v| v != 0.0) {
            return self.clone();
        }
        self.filter(|_, _, v| v != 0.0)
    }

    /// Keeps the stored entries for which `keep` returns true.
    pub fn filter<F: Fn(usize, usize, f64) -> bool>(&self, keep: F) -> Self {
        let mut indptr = Vec::with_capacity(self.nrows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                if keep(r, c, v) {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Self {
            nrows: self.nrows,
            ncols: self.ncols,
            indptr,
            indices,
            values,
        }
    }

    /// Main diagonal as a vector.
    pub fn diag(&self) -> DenseVector {
        (0..self.nrows.min(self.ncols))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// `dd(X) = diag(diag(X))`.
    pub fn diag_part(&self) -> Self {
        Self::diagonal(&self.diag())
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<DenseVector> {
        if x.len() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.nrows,
                self.ncols,
                x.len()
            )));
        }
        Ok((0..self.nrows)
            .map(|r| {
                let (cols, vals) = self.row(r);
                cols.iter().zip(vals).map(|(&c, &v)| v * x[c]).sum()
            })
            .collect())
    }

    pub fn row_sums(&self) -> DenseVector {
        (0..self.nrows)
            .map(|r| self.row(r).1.iter().sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.drop_zeros() == self.transpose().drop_zeros()
    }

    /// Rectangular block with the given row and column ranges.
    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        let mut indptr = Vec::with_capacity(rows.len() + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in rows.clone() {
            let (rc, rv) = self.row(r);
            for (&c, &v) in rc.iter().zip(rv) {
                if cols.contains(&c) {
                    indices.push(c - cols.start);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Self {
            nrows: rows.len(),
            ncols: cols.len(),
            indptr,
            indices,
            values,
        }
    }

    /// Principal submatrix on the given (not necessarily sorted) index set,
    /// in the order given.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let mut local = vec![usize::MAX; self.ncols];
        for (k, &i) in idx.iter().enumerate() {
            local[i] = k;
        }
        let trip = idx.iter().enumerate().flat_map(|(k, &i)| {
            let (cols, vals) = self.row(i);
            let local = &local;
            cols.iter()
                .zip(vals)
                .filter(move |(&c, _)| local[c] != usize::MAX)
                .map(move |(&c, &v)| (k, local[c], v))
        });
        Self::from_triplets(idx.len(), idx.len(), trip.collect::<Vec<_>>())
            .expect("principal submatrix keys are unique")
    }

    /// `P X Pᵀ` where `perm[i]` is the new position of index `i`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Result<Self> {
        if !self.is_square() || perm.len() != self.nrows {
            return Err(Error::DimensionMismatch(
                "permutation length must match a square matrix".into(),
            ));
        }
        Self::from_triplets(
            self.nrows,
            self.ncols,
            self.iter().map(|(r, c, v)| (perm[r], perm[c], v)),
        )
    }
}

/// Sparse product, see [`SparseMatrix::matmul`].
pub fn matmul(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    a.matmul(b)
}

/// Elementwise product, see [`SparseMatrix::hadamard`].
pub fn hadamard(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    a.hadamard(b)
}

/// Elementwise map over stored entries, see [`SparseMatrix::map`].
pub fn elementwise_map<F: Fn(f64) -> f64>(a: &SparseMatrix, f: F) -> Result<SparseMatrix> {
    a.map(f)
}

/// `x/(1−x)`.
pub fn f1(x: f64) -> f64 {
    x / (1.0 - x)
}

/// `x/(1+x)`.
pub fn f2(x: f64) -> f64 {
    x / (1.0 + x)
}

/// Maximum absolute entrywise difference between two dense matrices.
pub fn max_abs_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}
