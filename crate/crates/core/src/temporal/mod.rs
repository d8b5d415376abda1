//! Temporal networks: an ordered sequence of snapshots on a shared node set.
//!
//! Each snapshot contributes its edges to one global edge list, numbered
//! snapshot by snapshot. The global transition matrix `M` is block upper
//! triangular over that list. Block `(τ₁, τ₂)` with `τ₁ ≤ τ₂` holds the
//! elementwise square root of the permitted continuations from an edge at
//! `τ₁` to an edge at `τ₂`:
//!
//! | regime         | diagonal blocks | blocks above the diagonal |
//! |----------------|-----------------|---------------------------|
//! | `AllowAll`     | `W^[τ]`         | `W^[τ₁,τ₂]`               |
//! | `ForbidSpace`  | `B^[τ]`         | `W^[τ₁,τ₂]`               |
//! | `ForbidTime`   | `W^[τ]`         | `B^[τ₁,τ₂]`               |
//! | `ForbidAll`    | `B^[τ]`         | `B^[τ₁,τ₂]`               |
//!
//! with `W^[τ₁,τ₂] = Z^[τ₁] R^[τ₁] (L^[τ₂])ᵀ Z^[τ₂]` and
//! `B^[τ₁,τ₂] = W^[τ₁,τ₂] − (W^[τ₁,τ₂] ∘ (W^[τ₂,τ₁])ᵀ)^∘1/2`.

mod io;

pub use io::{parse_temporal_records, read_temporal_file, read_temporal_manifest};

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::edge::{apply_partial_f_with_radius, CoefficientSeries};
use crate::error::{Error, Result};
use crate::graph::{LineGraphDecomposition, WeightedGraph};
use crate::sparse::{spectral_radius_default, DenseVector, LinearSolver, SparseMatrix};

/// Snapshots `G^[1], …, G^[N]` over one node set, with non-decreasing
/// timestamps. Timestamps are metadata; the order of `snapshots` is the
/// time order.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalGraph {
    node_labels: Vec<String>,
    snapshots: Vec<WeightedGraph>,
    timestamps: Vec<f64>,
}

impl TemporalGraph {
    pub fn new(
        node_labels: Vec<String>,
        snapshots: Vec<WeightedGraph>,
        timestamps: Vec<f64>,
    ) -> Result<Self> {
        if snapshots.len() != timestamps.len() {
            return Err(Error::InvalidGraph(format!(
                "{} snapshots but {} timestamps",
                snapshots.len(),
                timestamps.len()
            )));
        }
        for (k, g) in snapshots.iter().enumerate() {
            if g.node_labels() != node_labels.as_slice() {
                return Err(Error::InvalidGraph(format!(
                    "snapshot {k} is not on the shared node set"
                )));
            }
        }
        if timestamps.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidGraph("non-finite timestamp".into()));
        }
        if timestamps.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidGraph(
                "timestamps must be non-decreasing".into(),
            ));
        }
        Ok(Self {
            node_labels,
            snapshots,
            timestamps,
        })
    }

    /// Snapshots on nodes `"0"`, …, `"n−1"` with timestamps `0, 1, …`.
    pub fn from_edge_lists(n: usize, snapshots: &[Vec<(usize, usize, f64)>]) -> Result<Self> {
        let graphs = snapshots
            .iter()
            .map(|e| WeightedGraph::from_edges(n, e))
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..n).map(|i| i.to_string()).collect();
        let times = (0..snapshots.len()).map(|k| k as f64).collect();
        Self::new(labels, graphs, times)
    }

    pub fn n(&self) -> usize {
        self.node_labels.len()
    }

    /// Number of snapshots `N`.
    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn node_labels(&self) -> &[String] {
        &self.node_labels
    }

    pub fn snapshots(&self) -> &[WeightedGraph] {
        &self.snapshots
    }

    pub fn timestamps(&self) -> &[f64] {
        &self.timestamps
    }

    /// Total edge count over all snapshots.
    pub fn total_edges(&self) -> usize {
        self.snapshots.iter().map(|g| g.m()).sum()
    }

    pub fn binarized(&self) -> Self {
        Self {
            node_labels: self.node_labels.clone(),
            snapshots: self.snapshots.iter().map(|g| g.binarized()).collect(),
            timestamps: self.timestamps.clone(),
        }
    }

    /// Union of all snapshots with weights summed, as one static graph.
    pub fn aggregate(&self) -> Result<WeightedGraph> {
        let n = self.n();
        let a = SparseMatrix::from_triplets_summed(
            n,
            n,
            self.snapshots
                .iter()
                .flat_map(|g| g.edges().iter().map(|e| (e.src, e.dst, e.weight))),
        )?;
        WeightedGraph::from_adjacency(self.node_labels.clone(), &a)
    }
}

/// Which backtracking steps a temporal walk may take.
///
/// Backtracking in space is `i→j` followed by `j→i` in the same snapshot;
/// backtracking in time is the same pair split across two snapshots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BacktrackRegime {
    AllowAll,
    ForbidSpace,
    ForbidTime,
    ForbidAll,
}

impl BacktrackRegime {
    pub const ALL: [BacktrackRegime; 4] = [
        Self::AllowAll,
        Self::ForbidSpace,
        Self::ForbidTime,
        Self::ForbidAll,
    ];

    pub fn forbids_space(self) -> bool {
        matches!(self, Self::ForbidSpace | Self::ForbidAll)
    }

    pub fn forbids_time(self) -> bool {
        matches!(self, Self::ForbidTime | Self::ForbidAll)
    }
}

impl fmt::Display for BacktrackRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AllowAll => "allow-all",
            Self::ForbidSpace => "forbid-space",
            Self::ForbidTime => "forbid-time",
            Self::ForbidAll => "forbid-all",
        })
    }
}

impl FromStr for BacktrackRegime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "allow-all" => Ok(Self::AllowAll),
            "forbid-space" => Ok(Self::ForbidSpace),
            "forbid-time" => Ok(Self::ForbidTime),
            "forbid-all" => Ok(Self::ForbidAll),
            _ => Err(Error::InvalidArgument(format!(
                "unknown regime {s:?} (expected allow-all, forbid-space, forbid-time or forbid-all)"
            ))),
        }
    }
}

/// Global edge-level matrices of a temporal graph for one regime.
#[derive(Debug, Clone)]
pub struct GlobalDecomposition {
    pub regime: BacktrackRegime,
    pub snapshots: Vec<LineGraphDecomposition>,
    /// Global edge range of snapshot `τ` is `offsets[τ]..offsets[τ+1]`.
    pub offsets: Vec<usize>,
    /// `𝓛`, m_total×n.
    pub source: SparseMatrix,
    /// `𝓡`, m_total×n.
    pub target: SparseMatrix,
    /// Global `Z`, diagonal.
    pub weights: SparseMatrix,
    pub m: SparseMatrix,
}

impl GlobalDecomposition {
    pub fn n(&self) -> usize {
        self.source.ncols()
    }

    pub fn total_edges(&self) -> usize {
        self.source.nrows()
    }

    /// Diagonal of global `√Z`.
    pub fn sqrt_weight_vector(&self) -> Vec<f64> {
        self.weights.diag().iter().map(|w| w.sqrt()).collect()
    }

    /// Snapshot owning global edge `e`.
    pub fn snapshot_of(&self, e: usize) -> usize {
        self.offsets.partition_point(|&o| o <= e) - 1
    }

    /// Block `(τ₁, τ₂)` of `M`.
    pub fn block(&self, t1: usize, t2: usize) -> SparseMatrix {
        self.m.submatrix(
            self.offsets[t1]..self.offsets[t1 + 1],
            self.offsets[t2]..self.offsets[t2 + 1],
        )
    }

    /// `ρ(M)`, the largest spectral radius among the diagonal blocks.
    pub fn spectral_radius(&self) -> Result<f64> {
        spectral_radius_default(&self.m)
    }
}

fn offsets_of(snapshots: &[LineGraphDecomposition]) -> Vec<usize> {
    let mut offsets = vec![0];
    for d in snapshots {
        offsets.push(offsets.last().unwrap() + d.m());
    }
    offsets
}

fn stacked(
    snapshots: &[LineGraphDecomposition],
    n: usize,
    pick: impl Fn(&crate::graph::Edge) -> usize,
) -> SparseMatrix {
    let entries = snapshots
        .iter()
        .flat_map(|d| d.edges().iter())
        .enumerate()
        .map(|(e, edge)| (e, pick(edge), 1.0));
    let m: usize = snapshots.iter().map(|d| d.m()).sum();
    SparseMatrix::from_triplets(m, n, entries).expect("one entry per row")
}

/// `W^[τ₁,τ₂] = Z^[τ₁] R^[τ₁] (L^[τ₂])ᵀ Z^[τ₂]`.
fn cross_line(d1: &LineGraphDecomposition, d2: &LineGraphDecomposition) -> Result<SparseMatrix> {
    d1.weights()
        .matmul(d1.target())?
        .matmul(&d2.source().transpose())?
        .matmul(d2.weights())
}

/// `B^[τ₁,τ₂] = W^[τ₁,τ₂] − (W^[τ₁,τ₂] ∘ (W^[τ₂,τ₁])ᵀ)^∘1/2`.
///
/// For a backtracking pair both factors equal `w_e·w_f` as the same
/// rounded product, and the square root of a correctly rounded square is
/// exact, so masked entries cancel to exactly zero.
fn cross_hashimoto(w12: &SparseMatrix, w21: &SparseMatrix) -> Result<SparseMatrix> {
    let back = w12.hadamard(&w21.transpose())?.sqrt_elementwise()?;
    w12.sub(&back)
}

fn push_block(out: &mut Vec<(usize, usize, f64)>, block: &SparseMatrix, r0: usize, c0: usize) {
    out.extend(block.iter().map(|(r, c, v)| (r0 + r, c0 + c, v)));
}

/// Assembles `M` for `regime` block by block.
pub fn build_global(tg: &TemporalGraph, regime: BacktrackRegime) -> Result<GlobalDecomposition> {
    let snapshots: Vec<_> = tg.snapshots().iter().map(|g| g.line_graph()).collect();
    let offsets = offsets_of(&snapshots);
    let total = *offsets.last().unwrap();
    let mut entries = Vec::new();
    for (a, d1) in snapshots.iter().enumerate() {
        let diag = if regime.forbids_space() {
            d1.hashimoto()
        } else {
            d1.line()
        };
        push_block(&mut entries, diag, offsets[a], offsets[a]);
        for (b, d2) in snapshots.iter().enumerate().skip(a + 1) {
            if d1.m() == 0 || d2.m() == 0 {
                continue;
            }
            let w12 = cross_line(d1, d2)?;
            let block = if regime.forbids_time() {
                cross_hashimoto(&w12, &cross_line(d2, d1)?)?
            } else {
                w12
            };
            push_block(&mut entries, &block, offsets[a], offsets[b]);
        }
    }
    let m = SparseMatrix::from_triplets(total, total, entries)?.sqrt_elementwise()?;
    Ok(assemble(regime, snapshots, offsets, tg.n(), m))
}

fn assemble(
    regime: BacktrackRegime,
    snapshots: Vec<LineGraphDecomposition>,
    offsets: Vec<usize>,
    n: usize,
    m: SparseMatrix,
) -> GlobalDecomposition {
    let source = stacked(&snapshots, n, |e| e.src);
    let target = stacked(&snapshots, n, |e| e.dst);
    let weights = SparseMatrix::diagonal(
        &snapshots
            .iter()
            .flat_map(|d| d.weight_vector())
            .collect::<Vec<_>>(),
    );
    GlobalDecomposition {
        regime,
        snapshots,
        offsets,
        source,
        target,
        weights,
        m,
    }
}

/// `M` for `ForbidAll` in two global steps: `√Z(𝓡𝓛ᵀ − 𝓡𝓛ᵀ ∘ 𝓛𝓡ᵀ)√Z`, then
/// drop everything below the block diagonal.
///
/// The middle factor is 0/1, so the product is taken as
/// `(Z(𝓡𝓛ᵀ − 𝓡𝓛ᵀ ∘ 𝓛𝓡ᵀ)Z)^∘1/2`. Each entry is then `√(w_e·w_f)` rounded
/// exactly as in [`build_global`], and the two constructions agree bit for
/// bit.
pub fn build_m_forbid_all_fast(tg: &TemporalGraph) -> Result<SparseMatrix> {
    let snapshots: Vec<_> = tg.snapshots().iter().map(|g| g.line_graph()).collect();
    let offsets = offsets_of(&snapshots);
    let l = stacked(&snapshots, tg.n(), |e| e.src);
    let r = stacked(&snapshots, tg.n(), |e| e.dst);
    let rl = r.matmul(&l.transpose())?;
    let lr = l.matmul(&r.transpose())?;
    let nonbacktracking = rl.sub(&rl.hadamard(&lr)?)?;
    let z = SparseMatrix::diagonal(
        &snapshots
            .iter()
            .flat_map(|d| d.weight_vector())
            .collect::<Vec<_>>(),
    );
    let full = z.matmul(&nonbacktracking)?.matmul(&z)?.sqrt_elementwise()?;
    let block: Vec<usize> = (0..snapshots.len())
        .flat_map(|k| std::iter::repeat_n(k, offsets[k + 1] - offsets[k]))
        .collect();
    Ok(full.filter(|i, j, _| block[i] <= block[j]))
}

/// `√Z Mᵏ √Z`: entry `(e, f)` sums the weights of permitted temporal walks
/// of `k + 1` edges that start with `e` and end with `f`.
pub fn temporal_walk_counts(gd: &GlobalDecomposition, k: usize) -> Result<SparseMatrix> {
    let sz = SparseMatrix::diagonal(&gd.sqrt_weight_vector());
    let mut acc = sz.clone();
    for _ in 0..k {
        acc = acc.matmul(&gd.m)?;
    }
    acc.matmul(&sz)
}

/// `v_f(t) = c₀𝟏 + t·𝓛ᵀ√Z ∂f(tM) √Z 𝓡 𝟏`, gated on `t·ρ(M) < r`.
///
/// The operator is read as `t·𝓛ᵀ√Z ∂f(tM)`, which is what the series
/// `Σ c_{k+1} tᵏ Mᵏ` expands to. Writing the `∂` in front of `𝓛ᵀ√Z f(tM)`
/// instead would not type-check as an operator on matrices.
pub fn temporal_f_centrality(
    gd: &GlobalDecomposition,
    series: &CoefficientSeries,
    t: f64,
    tol: f64,
) -> Result<DenseVector> {
    let rho = gd.spectral_radius()?;
    temporal_f_centrality_with_radius(gd, series, t, tol, rho)
}

pub fn temporal_f_centrality_with_radius(
    gd: &GlobalDecomposition,
    series: &CoefficientSeries,
    t: f64,
    tol: f64,
    rho_m: f64,
) -> Result<DenseVector> {
    let sw = gd.sqrt_weight_vector();
    let y = apply_partial_f_with_radius(series, &gd.m, t, &sw, tol, rho_m)?;
    let mut v = vec![series.c0(); gd.n()];
    for (e, (yi, s)) in y.iter().zip(&sw).enumerate() {
        let (cols, _) = gd.source.row(e);
        v[cols[0]] += t * s * yi;
    }
    Ok(v)
}

/// `max_τ ρ(A^[τ])`, zero for an empty sequence.
pub fn max_snapshot_radius(tg: &TemporalGraph) -> Result<f64> {
    tg.snapshots().iter().try_fold(0.0f64, |acc, g| {
        Ok(acc.max(spectral_radius_default(&g.adjacency())?))
    })
}

/// Classical temporal Katz `x = (I−tA^[1])⁻¹ ⋯ (I−tA^[N])⁻¹ 𝟏`, applied
/// right to left by one sparse solve per snapshot.
pub fn classical_temporal_katz(tg: &TemporalGraph, t: f64, tol: f64) -> Result<DenseVector> {
    let rho = max_snapshot_radius(tg)?;
    if !(t >= 0.0) || !(t * rho < 1.0) {
        return Err(Error::OutsideRadius {
            t,
            limit: if rho == 0.0 { f64::INFINITY } else { 1.0 / rho },
            what: "classical temporal Katz".into(),
        });
    }
    let n = tg.n();
    let mut x = vec![1.0; n];
    for g in tg.snapshots().iter().rev() {
        if g.m() == 0 {
            continue;
        }
        let system = SparseMatrix::identity(n).linear_combination(1.0, &g.adjacency(), -t)?;
        x = LinearSolver::new(&system)?.solve(&x, tol)?;
    }
    Ok(x)
}

fn reciprocal(rho: f64) -> f64 {
    if rho == 0.0 {
        f64::INFINITY
    } else {
        1.0 / rho
    }
}

/// Permitted `t` for a temporal measure: `[0, 1/ρ(M))` under a
/// nonbacktracking regime, `[0, 1/max_τ ρ(A^[τ]))` for the classical
/// measure (`regime = None`).
pub fn permitted_t_range(
    tg: &TemporalGraph,
    regime: Option<BacktrackRegime>,
) -> Result<Range<f64>> {
    let rho = match regime {
        Some(r) => build_global(tg, r)?.spectral_radius()?,
        None => max_snapshot_radius(tg)?,
    };
    Ok(0.0..reciprocal(rho))
}

/// Radii reported for a temporal graph under one regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemporalRadii {
    /// `ρ(M)`.
    pub rho_m: f64,
    /// `max_τ ρ(C^[τ])` with the diagonal blocks before the elementwise
    /// square root. Differs from `ρ(M)` unless weights are binary.
    pub max_rho_c: f64,
    /// `max_τ ρ(A^[τ])`.
    pub max_rho_a: f64,
}

impl TemporalRadii {
    pub fn compute(tg: &TemporalGraph, regime: BacktrackRegime) -> Result<Self> {
        let gd = build_global(tg, regime)?;
        let rho_m = gd.spectral_radius()?;
        let max_rho_c = gd.snapshots.iter().try_fold(0.0f64, |acc, d| {
            let c = if regime.forbids_space() {
                d.hashimoto()
            } else {
                d.line()
            };
            Ok::<_, Error>(acc.max(spectral_radius_default(c)?))
        })?;
        Ok(Self {
            rho_m,
            max_rho_c,
            max_rho_a: max_snapshot_radius(tg)?,
        })
    }

    /// Upper end of `[0, 1/ρ(M))`.
    pub fn nbt_limit(&self) -> f64 {
        reciprocal(self.rho_m)
    }

    /// Upper end of `[0, 1/max_τ ρ(C^[τ]))`, the per-block bound.
    pub fn block_limit(&self) -> f64 {
        reciprocal(self.max_rho_c)
    }

    /// Upper end of `[0, 1/max_τ ρ(A^[τ]))`.
    pub fn classical_limit(&self) -> f64 {
        reciprocal(self.max_rho_a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge::{edge_centrality, EdgeCentralityPlan};

    fn pair() -> TemporalGraph {
        TemporalGraph::from_edge_lists(2, &[vec![(0, 1, 2.0)], vec![(1, 0, 3.0)]]).unwrap()
    }

    fn random_like() -> TemporalGraph {
        TemporalGraph::from_edge_lists(
            5,
            &[
                vec![(0, 1, 1.5), (1, 0, 0.5), (1, 2, 2.0), (3, 4, 1.0)],
                vec![(2, 1, 1.2), (1, 3, 0.7), (4, 3, 2.5), (0, 4, 1.1)],
                vec![
                    (3, 1, 0.9),
                    (1, 2, 1.3),
                    (2, 0, 0.6),
                    (4, 0, 1.4),
                    (0, 4, 0.8),
                ],
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        let g = WeightedGraph::from_edges(2, &[]).unwrap();
        let labels = vec!["0".to_string(), "1".to_string()];
        assert!(
            TemporalGraph::new(labels.clone(), vec![g.clone(), g.clone()], vec![1.0, 0.0]).is_err()
        );
        assert!(TemporalGraph::new(labels.clone(), vec![g.clone()], vec![]).is_err());
        assert!(TemporalGraph::new(labels, vec![g.clone(), g], vec![1.0, 1.0]).is_ok());
        let other = WeightedGraph::from_edges(3, &[]).unwrap();
        assert!(TemporalGraph::new(vec!["0".into(), "1".into()], vec![other], vec![0.0]).is_err());
    }

    #[test]
    fn regime_parsing() {
        for r in BacktrackRegime::ALL {
            assert_eq!(r.to_string().parse::<BacktrackRegime>().unwrap(), r);
        }
        assert_eq!(
            "FORBID_ALL".parse::<BacktrackRegime>().unwrap(),
            BacktrackRegime::ForbidAll
        );
        assert!("forbid".parse::<BacktrackRegime>().is_err());
    }

    #[test]
    fn pair_examples() {
        let tg = pair();
        let fa = build_global(&tg, BacktrackRegime::ForbidAll).unwrap();
        assert_eq!(fa.m.nnz(), 0);
        assert_eq!(build_m_forbid_all_fast(&tg).unwrap().nnz(), 0);
        let aa = build_global(&tg, BacktrackRegime::AllowAll).unwrap();
        assert_eq!(aa.m.shape(), (2, 2));
        assert_eq!(aa.m.nnz(), 1);
        assert_eq!(aa.m.get(0, 1), 6f64.sqrt());

        let c = temporal_walk_counts(&aa, 1).unwrap();
        assert!((c.get(0, 1) - 6.0).abs() < 1e-14);
        for k in 1..4 {
            assert_eq!(temporal_walk_counts(&fa, k).unwrap().nnz(), 0);
        }
        assert_eq!(temporal_walk_counts(&aa, 2).unwrap().nnz(), 0);
    }

    #[test]
    fn pair_centralities() {
        let tg = pair();
        let t = 0.1;
        let fa = build_global(&tg, BacktrackRegime::ForbidAll).unwrap();
        let v = temporal_f_centrality(&fa, &CoefficientSeries::Resolvent, t, 1e-13).unwrap();
        assert!((v[0] - (1.0 + 2.0 * t)).abs() < 1e-14 && (v[1] - (1.0 + 3.0 * t)).abs() < 1e-14);
        let aa = build_global(&tg, BacktrackRegime::AllowAll).unwrap();
        let v = temporal_f_centrality(&aa, &CoefficientSeries::Resolvent, t, 1e-13).unwrap();
        let expected = [1.0 + 2.0 * t + 6.0 * t * t, 1.0 + 3.0 * t];
        assert!((v[0] - expected[0]).abs() < 1e-14 && (v[1] - expected[1]).abs() < 1e-14);
        let x = classical_temporal_katz(&tg, t, 1e-13).unwrap();
        assert!((x[0] - 1.26).abs() < 1e-14 && (x[1] - 1.3).abs() < 1e-14);
    }

    #[test]
    fn empty_and_single_snapshot() {
        let empty = TemporalGraph::from_edge_lists(3, &[vec![], vec![]]).unwrap();
        let gd = build_global(&empty, BacktrackRegime::ForbidAll).unwrap();
        assert_eq!(gd.total_edges(), 0);
        assert_eq!(
            temporal_f_centrality(&gd, &CoefficientSeries::Resolvent, 0.5, 1e-12).unwrap(),
            vec![1.0; 3]
        );
        assert_eq!(
            classical_temporal_katz(&empty, 0.5, 1e-12).unwrap(),
            vec![1.0; 3]
        );
        assert_eq!(
            permitted_t_range(&empty, Some(BacktrackRegime::AllowAll))
                .unwrap()
                .end,
            f64::INFINITY
        );

        let edges = vec![(0, 1, 1.5), (1, 0, 0.5), (1, 2, 2.0), (2, 0, 1.0)];
        let tg = TemporalGraph::from_edge_lists(3, std::slice::from_ref(&edges)).unwrap();
        let g = WeightedGraph::from_edges(3, &edges).unwrap();
        let d = g.line_graph();
        for r in [BacktrackRegime::ForbidSpace, BacktrackRegime::ForbidAll] {
            assert_eq!(build_global(&tg, r).unwrap().m, *d.v());
        }
        for r in [BacktrackRegime::AllowAll, BacktrackRegime::ForbidTime] {
            assert_eq!(build_global(&tg, r).unwrap().m, d.line_sqrt());
        }
        assert_eq!(build_m_forbid_all_fast(&tg).unwrap(), *d.v());

        let t = 0.3;
        let gd = build_global(&tg, BacktrackRegime::ForbidSpace).unwrap();
        let v = temporal_f_centrality(&gd, &CoefficientSeries::Resolvent, t, 1e-13).unwrap();
        let plan = EdgeCentralityPlan::new(d, CoefficientSeries::Resolvent, t, 1e-13).unwrap();
        let s = edge_centrality(&plan).unwrap();
        for (a, b) in v.iter().zip(&s) {
            assert!((a - b).abs() < 1e-12);
        }
        let x = classical_temporal_katz(&tg, t, 1e-13).unwrap();
        let k = crate::node::katz(&g.adjacency(), t, 1e-13).unwrap();
        assert_eq!(x, k);
    }

    #[test]
    fn fast_forbid_all_matches() {
        let tg = random_like();
        let slow = build_global(&tg, BacktrackRegime::ForbidAll).unwrap().m;
        let fast = build_m_forbid_all_fast(&tg).unwrap();
        assert_eq!(slow, fast);
    }

    #[test]
    fn lower_blocks_vanish_and_regimes_nest() {
        let tg = random_like();
        let ms: Vec<_> = BacktrackRegime::ALL
            .iter()
            .map(|&r| build_global(&tg, r).unwrap())
            .collect();
        for gd in &ms {
            for (r, c, _) in gd.m.iter() {
                assert!(gd.snapshot_of(r) <= gd.snapshot_of(c));
            }
        }
        let le = |a: &SparseMatrix, b: &SparseMatrix| a.iter().all(|(r, c, v)| v <= b.get(r, c));
        let [aa, fs, ft, fa] = [&ms[0].m, &ms[1].m, &ms[2].m, &ms[3].m];
        assert!(le(fa, fs) && le(fs, aa) && le(fa, ft) && le(ft, aa));
    }

    #[test]
    fn allow_all_resolvent_is_classical_katz() {
        let tg = random_like();
        let gd = build_global(&tg, BacktrackRegime::AllowAll).unwrap();
        let range = permitted_t_range(&tg, None).unwrap();
        let t = 0.5 * range.end.min(1.0 / gd.spectral_radius().unwrap());
        let v = temporal_f_centrality(&gd, &CoefficientSeries::Resolvent, t, 1e-13).unwrap();
        let x = classical_temporal_katz(&tg, t, 1e-13).unwrap();
        for (a, b) in v.iter().zip(&x) {
            assert!((a - b).abs() < 1e-12 * b);
        }
    }

    #[test]
    fn radius_is_max_over_diagonal_blocks() {
        let tg = random_like();
        for r in BacktrackRegime::ALL {
            let gd = build_global(&tg, r).unwrap();
            let rho = gd.spectral_radius().unwrap();
            let blocks = (0..tg.len())
                .map(|k| spectral_radius_default(&gd.block(k, k)).unwrap())
                .fold(0.0f64, f64::max);
            assert!((rho - blocks).abs() <= 1e-8 * rho.max(1.0));
            let dense = nalgebra::Schur::try_new(gd.m.to_dense(), f64::EPSILON, 10_000)
                .expect("schur converges")
                .complex_eigenvalues()
                .iter()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max);
            assert!(
                (rho - dense).abs() <= 1e-6 * dense.max(1.0),
                "{r}: {rho} vs {dense}"
            );
            let radii = TemporalRadii::compute(&tg, r).unwrap();
            assert_eq!(radii.rho_m, rho);
        }
    }

    #[test]
    fn outside_range_rejected() {
        let tg = random_like();
        let end = permitted_t_range(&tg, None).unwrap().end;
        assert!(matches!(
            classical_temporal_katz(&tg, end * 1.01, 1e-10),
            Err(Error::OutsideRadius { .. })
        ));
        let gd = build_global(&tg, BacktrackRegime::ForbidAll).unwrap();
        let lim = 1.0 / gd.spectral_radius().unwrap();
        assert!(
            temporal_f_centrality(&gd, &CoefficientSeries::Resolvent, lim * 1.01, 1e-10).is_err()
        );
    }
}
