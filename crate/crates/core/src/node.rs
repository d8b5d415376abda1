//! Node-level route: the growing recurrence for `p_k(A)`, the closed-form
//! inverse generating function `Ψ(t)`, and nonbacktracking Katz centrality
//! by one sparse linear solve.
//!
//! With `S = A∘Aᵀ` and `Q = S^∘1/2`,
//!
//! ```text
//! Ψ(t) = I + dd[f₁(∘tQ) f₂(∘tQ)] − tA ∘/ (𝟏𝟏ᵀ − t²S),   Φ(t) = Ψ(t)⁻¹
//! ```
//!
//! where `f₁(x) = x/(1−x)`, `f₂(x) = x/(1+x)` act entrywise and `∘/` is
//! entrywise division. `Ψ(t)` has the sparsity of `I + A`.

use log::warn;

use crate::error::{Error, Result};
use crate::sparse::{DenseMatrix, DenseVector, LinearSolver, SparseMatrix, DENSE_THRESHOLD};

/// Relative distance from an elementwise pole `t²S_ij = 1` inside which
/// `Ψ(t)` is refused.
pub const POLE_GUARD: f64 = 1e-8;

/// `1 − t²·a·b` with the product carried in double-double, so the result
/// keeps full relative accuracy close to the pole.
fn one_minus_t2_product(t: f64, a: f64, b: f64) -> f64 {
    let (s_hi, s_lo) = two_product(a, b);
    let (t2_hi, t2_lo) = two_product(t, t);
    let (x_hi, x_err) = two_product(t2_hi, s_hi);
    let x_lo = x_err + t2_hi * s_lo + t2_lo * s_hi;
    (1.0 - x_hi) - x_lo
}

fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub(crate) fn check_adjacency(a: &SparseMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "adjacency must be square, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if !a.is_nonnegative() {
        return Err(Error::InvalidMatrix(
            "adjacency has negative entries".into(),
        ));
    }
    if a.diag().iter().any(|&d| d != 0.0) {
        return Err(Error::InvalidMatrix(
            "adjacency has a nonzero diagonal (self-loop)".into(),
        ));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "t = {t} must be finite and nonnegative"
        )));
    }
    Ok(())
}

fn check_radius(t: f64, radius: Option<f64>, what: &str) -> Result<bool> {
    match radius {
        Some(r) if !(t < r) => Err(Error::OutsideRadius {
            t,
            limit: r,
            what: what.to_string(),
        }),
        Some(_) => Ok(true),
        None => Ok(false),
    }
}

/// `p_0(A), …, p_kmax(A)`: weighted sums of nonbacktracking walks by length.
///
/// For `k ≥ 2`,
///
/// ```text
/// p_k = Σ_{ℓ=2h+1 ≤ k} (A^∘(h+1) ∘ (Aᵀ)^∘h) p_{k−ℓ} − Σ_{ℓ=2h ≤ k, h≥1} dd((A^∘h)²) p_{k−ℓ}
/// ```
///
/// Both coefficient families are powers of `S = A∘Aᵀ`:
/// `A^∘(h+1) ∘ (Aᵀ)^∘h = A ∘ S^∘h` and `dd((A^∘h)²)_ii = Σ_j S_ij^h`, so each
/// extra `h` costs one Hadamard product.
pub fn pk_recurrence(a: &SparseMatrix, kmax: usize) -> Result<Vec<SparseMatrix>> {
    check_adjacency(a)?;
    let n = a.nrows();
    let mut p = vec![SparseMatrix::identity(n)];
    if kmax == 0 {
        return Ok(p);
    }
    p.push(a.drop_zeros());

    let s = a.hadamard(&a.transpose())?;
    // odd[h] = A ∘ S^∘h, even[h] = diag of Σ_j S_ij^h (even[0] unused)
    let mut odd = vec![a.drop_zeros()];
    let mut even = vec![vec![0.0; n]];
    let mut s_pow = s.clone();

    for k in 2..=kmax {
        while 2 * odd.len() < k + 1 {
            odd.push(a.hadamard(&s_pow)?);
            even.push(s_pow.row_sums());
            s_pow = s_pow.hadamard(&s)?;
        }
        let mut plus = SparseMatrix::zeros(n, n);
        for (h, coeff) in odd.iter().enumerate() {
            let ell = 2 * h + 1;
            if ell > k {
                break;
            }
            plus = plus.add(&coeff.matmul(&p[k - ell])?)?;
        }
        let mut minus = SparseMatrix::zeros(n, n);
        for (h, d) in even.iter().enumerate().skip(1) {
            let ell = 2 * h;
            if ell > k {
                break;
            }
            minus = minus.add(&p[k - ell].scale_rows(d)?)?;
        }
        // Exact values are nonnegative. Anything within rounding of the
        // cancelled magnitude is an exact zero.
        let magnitude = plus.add(&minus)?;
        let slack = 4.0 * (n + k) as f64 * f64::EPSILON;
        let acc = plus.sub(&minus)?;
        p.push(acc.filter(|i, j, v| v > slack * magnitude.get(i, j)));
    }
    Ok(p)
}

/// `Ψ(t)` together with the pieces it is assembled from.
#[derive(Debug, Clone)]
pub struct NbtNodeSystem {
    pub a: SparseMatrix,
    /// `S = A∘Aᵀ`, symmetric.
    pub s: SparseMatrix,
    /// `Q = S^∘1/2`, symmetric.
    pub q: SparseMatrix,
    pub t: f64,
    pub psi: SparseMatrix,
}

impl NbtNodeSystem {
    /// Assembles `Ψ(t) = I + dd[f₁(∘tQ) f₂(∘tQ)] − tA ∘/ (𝟏𝟏ᵀ − t²S)`.
    ///
    /// The division only touches the pattern of `A`, since `tA` vanishes
    /// elsewhere, so no dense intermediate is formed. Fails when some
    /// reciprocated pair sits on an elementwise pole, `t²S_ij = 1` (to
    /// relative accuracy [`POLE_GUARD`]). Past the first pole the closed form
    /// is still the analytic continuation of `Ψ` and stays valid as long as
    /// the walk series converges.
    pub fn assemble(a: &SparseMatrix, t: f64) -> Result<Self> {
        check_adjacency(a)?;
        check_t(t)?;
        let n = a.nrows();
        let a = a.drop_zeros();
        let s = a.hadamard(&a.transpose())?;
        let q = s.sqrt_elementwise()?;

        for (i, j, sij) in s.iter() {
            let x = t * t * sij;
            if (1.0 - x).abs() <= POLE_GUARD {
                return Err(Error::ElementwisePole {
                    row: i,
                    col: j,
                    detail: format!(
                        "t²·S = {x} on the reciprocated edge pair, at the pole of x/(1−x)"
                    ),
                });
            }
        }

        // Entrywise, dd[f₁(tQ) f₂(tQ)]_ii = Σ_j t²S_ij/(1 − t²S_ij). Both that
        // sum and the off-diagonal quotient are formed from one accurate
        // denominator per reciprocated pair.
        let mut diag = vec![1.0; n];
        let mut off = Vec::with_capacity(a.nnz());
        for (i, j, aij) in a.iter() {
            let aji = a.get(j, i);
            if aji == 0.0 {
                off.push((i, j, t * aij));
                continue;
            }
            let den = one_minus_t2_product(t, aij, aji);
            diag[i] += t * t * aij * aji / den;
            off.push((i, j, t * aij / den));
        }
        let off = SparseMatrix::from_triplets(n, n, off)?;
        let psi = SparseMatrix::diagonal(&diag).sub(&off)?;
        Ok(Self { a, s, q, t, psi })
    }

    /// True when `t²·max S < 1`, i.e. `t` lies below every elementwise
    /// pole. There `diag(Ψ) ≥ 1` and the off-diagonal part is `≤ 0`.
    pub fn below_first_pole(&self) -> bool {
        self.t * self.t * self.s.max_abs() < 1.0
    }

    /// Largest `t` for which [`NbtNodeSystem::below_first_pole`] holds.
    pub fn first_pole(a: &SparseMatrix) -> Result<f64> {
        check_adjacency(a)?;
        let smax = a.hadamard(&a.transpose())?.max_abs();
        Ok(if smax == 0.0 {
            f64::INFINITY
        } else {
            1.0 / smax.sqrt()
        })
    }
}

/// Assembles `Ψ(t)`; see [`NbtNodeSystem::assemble`].
pub fn assemble_psi(a: &SparseMatrix, t: f64) -> Result<NbtNodeSystem> {
    NbtNodeSystem::assemble(a, t)
}

/// Dense `Φ(t) = Ψ(t)⁻¹`. When `radius` is given (normally `1/ρ(V)`),
/// `t` must lie strictly below it.
pub fn phi_dense(a: &SparseMatrix, t: f64, radius: Option<f64>) -> Result<DenseMatrix> {
    check_radius(t, radius, "the nonbacktracking generating function")?;
    if a.nrows() > DENSE_THRESHOLD {
        return Err(Error::InvalidArgument(format!(
            "dense Φ(t) limited to n ≤ {DENSE_THRESHOLD}, got n = {}",
            a.nrows()
        )));
    }
    let sys = NbtNodeSystem::assemble(a, t)?;
    sys.psi
        .to_dense()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::Singular("Ψ(t) is singular".into()))
}

/// Nonbacktracking Katz scores with a note on how `t` was validated.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeCentrality {
    pub scores: DenseVector,
    /// False when no radius was supplied, so only the pole condition was
    /// enforced.
    pub radius_checked: bool,
}

/// Nonbacktracking Katz centrality `x = Φ(t)𝟏`, found by solving
/// `Ψ(t) x = 𝟏` to relative residual `tol`.
///
/// `radius` is the convergence radius `1/ρ(V)` from the edge-level route;
/// without it only the elementwise pole is checked and a warning is logged.
pub fn nbt_katz(a: &SparseMatrix, t: f64, tol: f64, radius: Option<f64>) -> Result<NodeCentrality> {
    let radius_checked = check_radius(t, radius, "nonbacktracking Katz")?;
    if !radius_checked {
        warn!("nonbacktracking Katz at t = {t} without a convergence radius; only the pole condition was checked");
    }
    let sys = NbtNodeSystem::assemble(a, t)?;
    let ones = vec![1.0; a.nrows()];
    let scores = LinearSolver::new(&sys.psi)?.solve(&ones, tol)?;
    Ok(NodeCentrality {
        scores,
        radius_checked,
    })
}

/// Classical Katz `(I − tA)⁻¹𝟏`.
pub fn katz(a: &SparseMatrix, t: f64, tol: f64) -> Result<DenseVector> {
    check_t(t)?;
    let m = SparseMatrix::identity(a.nrows()).linear_combination(1.0, a, -t)?;
    LinearSolver::new(&m)?.solve(&vec![1.0; a.nrows()], tol)
}

/// Closed forms of `Φ(t)` for special graph classes, independent of the
/// general assembly.
pub mod limiting {
    use super::*;

    fn dense_inverse(m: DenseMatrix) -> Result<DenseMatrix> {
        m.lu()
            .try_inverse()
            .ok_or_else(|| Error::Singular("singular limiting-case matrix".into()))
    }

    /// Unweighted, possibly directed: `(1−t²)(I − tA + t²(D−I) + t³(A−S))⁻¹`
    /// with `D = dd(A²)`.
    pub fn phi_unweighted_directed(a: &SparseMatrix, t: f64) -> Result<DenseMatrix> {
        let n = a.nrows();
        let ad = a.to_dense();
        let s = a.hadamard(&a.transpose())?.to_dense();
        let d = DenseMatrix::from_diagonal(&(&ad * &ad).diagonal());
        let id = DenseMatrix::identity(n, n);
        let m = &id - &ad * t + (&d - &id) * (t * t) + (&ad - &s) * (t * t * t);
        Ok(dense_inverse(m)? * (1.0 - t * t))
    }

    /// Unweighted undirected: `(1−t²)(I − At + t²(D−I))⁻¹`.
    pub fn phi_unweighted_undirected(a: &SparseMatrix, t: f64) -> Result<DenseMatrix> {
        let n = a.nrows();
        let ad = a.to_dense();
        let d = DenseMatrix::from_diagonal(&(&ad * &ad).diagonal());
        let id = DenseMatrix::identity(n, n);
        let m = &id - &ad * t + (&d - &id) * (t * t);
        Ok(dense_inverse(m)? * (1.0 - t * t))
    }

    /// No reciprocated edges: `(I − tA)⁻¹`.
    pub fn phi_reciprocation_free(a: &SparseMatrix, t: f64) -> Result<DenseMatrix> {
        let n = a.nrows();
        dense_inverse(DenseMatrix::identity(n, n) - a.to_dense() * t)
    }
}
