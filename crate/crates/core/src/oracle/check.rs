//! Cross-validation battery: every closed form against enumeration and
//! every pair of independent routes against each other.

use std::fmt;

use crate::edge::{
    convergence_radius, edge_centrality, phi_via_linegraph, project_pk, project_walk_counts,
    CoefficientSeries, EdgeCentralityPlan,
};
use crate::error::Result;
use crate::graph::{LineGraphDecomposition, WeightedGraph};
use crate::node::{nbt_katz, phi_dense, pk_recurrence};
use crate::sparse::DenseMatrix;
use crate::temporal::{
    build_global, build_m_forbid_all_fast, classical_temporal_katz, permitted_t_range,
    temporal_f_centrality, temporal_walk_counts, BacktrackRegime, TemporalGraph,
};

use super::{enumerate_static_nbt, enumerate_temporal};

/// One identity and how far the two sides were apart.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    /// Relative max-norm deviation; infinite on a sparsity mismatch.
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} (max deviation {:.3e}, tolerance {:.0e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.deviation,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Longest static walk compared.
    pub kmax: usize,
    /// Longest temporal walk compared is `temporal_kmax + 1` edges.
    pub temporal_kmax: usize,
    /// Tolerance for walk sums against enumeration.
    pub count_tol: f64,
    /// Tolerance for two routes through linear solves.
    pub route_tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            kmax: 6,
            temporal_kmax: 4,
            count_tol: 1e-12,
            route_tol: 1e-10,
        }
    }
}

/// `max|a − b| / max(max|a|, max|b|)`, zero when both vanish.
pub fn relative_deviation(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    let scale = a.amax().max(b.amax());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).amax() / scale
    }
}

fn vector_deviation(a: &[f64], b: &[f64]) -> f64 {
    relative_deviation(
        &DenseMatrix::from_column_slice(a.len(), 1, a),
        &DenseMatrix::from_column_slice(b.len(), 1, b),
    )
}

fn result(name: impl Into<String>, deviation: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name: name.into(),
        deviation,
        tolerance,
    }
}

/// Sample points `{0.25, 0.5, 0.9}·(1/ρ(V))`, or of 1 when `V` is nilpotent.
pub fn sample_ts(radius: f64) -> [f64; 3] {
    let base = if radius.is_finite() { radius } else { 1.0 };
    [0.25 * base, 0.5 * base, 0.9 * base]
}

/// Static identities for `g`, with the edge route taken from `d`. Passing
/// a decomposition that does not belong to `g` makes the edge-route checks
/// fail, which is how fault injection is exercised.
pub fn check_static(
    g: &WeightedGraph,
    d: &LineGraphDecomposition,
    opts: &CheckOptions,
) -> Result<Vec<CheckResult>> {
    let a = g.adjacency();
    let oracle = enumerate_static_nbt(g, opts.kmax)?;
    let rec = pk_recurrence(&a, opts.kmax)?;
    let mut out = Vec::new();

    let dev = (0..=opts.kmax)
        .map(|k| relative_deviation(&rec[k].to_dense(), &oracle[k]))
        .fold(0.0, f64::max);
    out.push(result("nbt recurrence vs oracle", dev, opts.count_tol));

    let mut dev = 0.0f64;
    for k in 1..=opts.kmax {
        dev = dev.max(relative_deviation(
            &project_pk(d, k - 1)?.to_dense(),
            &oracle[k],
        ));
    }
    out.push(result(
        "nbt line-graph projection vs oracle",
        dev,
        opts.count_tol,
    ));

    let ad = a.to_dense();
    let mut power = ad.clone();
    let mut dev = 0.0f64;
    for k in 0..opts.kmax {
        dev = dev.max(relative_deviation(
            &project_walk_counts(d, k)?.to_dense(),
            &power,
        ));
        power = &power * &ad;
    }
    out.push(result(
        "walk-count projection vs matrix powers",
        dev,
        opts.count_tol,
    ));

    let radius = convergence_radius(d)?;
    let (mut katz_dev, mut phi_dev) = (0.0f64, 0.0f64);
    for t in sample_ts(radius) {
        let plan = EdgeCentralityPlan::new(d.clone(), CoefficientSeries::Resolvent, t, 1e-13)?;
        let v = edge_centrality(&plan)?;
        let x = nbt_katz(&a, t, 1e-13, Some(radius))?.scores;
        katz_dev = katz_dev.max(vector_deviation(&v, &x));
        let p1 = phi_dense(&a, t, Some(radius))?;
        let p2 = phi_via_linegraph(d, t)?;
        phi_dev = phi_dev.max(relative_deviation(&p1, &p2));
    }
    out.push(result(
        "nbt katz node route vs edge route",
        katz_dev,
        opts.route_tol,
    ));
    out.push(result(
        "generating function node route vs line-graph route",
        phi_dev,
        opts.route_tol,
    ));
    Ok(out)
}

/// Temporal identities: walk counts per regime against enumeration, the
/// fast `M` construction, and allow-all resolvent against classical Katz.
pub fn check_temporal(tg: &TemporalGraph, opts: &CheckOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for regime in BacktrackRegime::ALL {
        let gd = build_global(tg, regime)?;
        let oracle = enumerate_temporal(tg, regime, opts.temporal_kmax)?;
        let mut dev = 0.0f64;
        for (k, o) in oracle.iter().enumerate() {
            dev = dev.max(relative_deviation(
                &temporal_walk_counts(&gd, k)?.to_dense(),
                o,
            ));
        }
        out.push(result(
            format!("temporal walk counts vs oracle ({regime})"),
            dev,
            opts.count_tol,
        ));
    }

    let direct = build_global(tg, BacktrackRegime::ForbidAll)?.m;
    let fast = build_m_forbid_all_fast(tg)?;
    let dev = if direct.pattern() != fast.pattern() {
        f64::INFINITY
    } else {
        relative_deviation(&direct.to_dense(), &fast.to_dense())
    };
    out.push(result("fast forbid-all construction vs direct", dev, 0.0));

    let gd = build_global(tg, BacktrackRegime::AllowAll)?;
    let rho = gd.spectral_radius()?;
    let limit =
        permitted_t_range(tg, None)?
            .end
            .min(if rho == 0.0 { f64::INFINITY } else { 1.0 / rho });
    let mut dev = 0.0f64;
    for t in sample_ts(limit) {
        let v = temporal_f_centrality(&gd, &CoefficientSeries::Resolvent, t, 1e-13)?;
        let x = classical_temporal_katz(tg, t, 1e-13)?;
        dev = dev.max(vector_deviation(&v, &x));
    }
    out.push(result(
        "allow-all temporal resolvent vs classical temporal katz",
        dev,
        opts.route_tol,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> WeightedGraph {
        WeightedGraph::from_edges(
            5,
            &[
                (0, 1, 1.0),
                (1, 0, 2.0),
                (1, 2, 3.0),
                (2, 3, 1.0),
                (3, 1, 2.0),
                (3, 4, 1.0),
                (4, 3, 1.0),
                (4, 0, 2.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fixture_passes() {
        let g = fixture();
        let res = check_static(&g, &g.line_graph(), &CheckOptions::default()).unwrap();
        for r in &res {
            assert!(r.passed(), "{r}");
        }
        assert!(res[..3].iter().all(|r| r.deviation < 1e-12));
    }

    #[test]
    fn injected_fault_is_named() {
        let g = fixture();
        let bad = g.line_graph().with_tampered_weight(2, 3.5);
        let res = check_static(&g, &bad, &CheckOptions::default()).unwrap();
        let failed: Vec<_> = res
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.name.as_str())
            .collect();
        assert!(failed.contains(&"nbt line-graph projection vs oracle"));
        assert!(res[0].passed());
    }

    #[test]
    fn empty_graph_passes() {
        let g = WeightedGraph::from_edges(4, &[]).unwrap();
        let res = check_static(&g, &g.line_graph(), &CheckOptions::default()).unwrap();
        assert!(res.iter().all(|r| r.passed() && r.deviation == 0.0));
    }

    #[test]
    fn temporal_battery() {
        let tg = TemporalGraph::from_edge_lists(
            4,
            &[
                vec![(0, 1, 2.0), (1, 0, 1.0), (1, 2, 1.0)],
                vec![(2, 1, 3.0), (1, 0, 1.0), (2, 3, 2.0)],
                vec![(3, 2, 1.0), (0, 1, 1.0)],
            ],
        )
        .unwrap();
        for r in check_temporal(&tg, &CheckOptions::default()).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
}
