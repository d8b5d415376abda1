//! Brute-force walk enumeration, the ground truth for every formula in the
//! crate. Nothing here touches line graphs, recurrences or `M`; walks are
//! listed one by one by depth-first search and their weights summed.

pub mod check;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::sparse::DenseMatrix;
use crate::temporal::{BacktrackRegime, TemporalGraph};

/// Refuse enumerations expected to visit more walks than this.
pub const WALK_LIMIT: f64 = 1e7;

/// A static walk as its node sequence, with the product of its edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkRecord {
    pub nodes: Vec<usize>,
    pub weight: f64,
}

/// A temporal walk as a sequence of `(snapshot, edge index within the
/// snapshot)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalWalkRecord {
    pub edges: Vec<(usize, usize)>,
    pub weight: f64,
}

/// Upper bound on the number of walks (backtracking or not) of length
/// `1..=kmax` over a 0/1 successor structure.
fn walk_estimate(succ: &[Vec<usize>], kmax: usize) -> f64 {
    let mut x = vec![1.0; succ.len()];
    let mut total = 0.0;
    for _ in 0..kmax {
        let next: Vec<f64> = succ.iter().map(|s| s.iter().map(|&j| x[j]).sum()).collect();
        total += next.iter().sum::<f64>();
        x = next;
        if total > WALK_LIMIT {
            break;
        }
    }
    total
}

fn guard(succ: &[Vec<usize>], kmax: usize) -> Result<()> {
    let estimate = walk_estimate(succ, kmax);
    if estimate > WALK_LIMIT {
        return Err(Error::EnumerationLimit {
            estimate,
            limit: WALK_LIMIT,
        });
    }
    Ok(())
}

/// Visits every nonbacktracking walk of length `1..=kmax`: no step `j → i`
/// directly after `i → j`.
pub fn visit_static_nbt<F: FnMut(&[usize], f64)>(
    g: &WeightedGraph,
    kmax: usize,
    mut visit: F,
) -> Result<()> {
    let n = g.n();
    let mut out: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for e in g.edges() {
        out[e.src].push((e.dst, e.weight));
    }
    let succ: Vec<Vec<usize>> = out
        .iter()
        .map(|o| o.iter().map(|&(j, _)| j).collect())
        .collect();
    guard(&succ, kmax)?;

    fn dfs<F: FnMut(&[usize], f64)>(
        out: &[Vec<(usize, f64)>],
        path: &mut Vec<usize>,
        weight: f64,
        kmax: usize,
        visit: &mut F,
    ) {
        let len = path.len() - 1;
        if len >= 1 {
            visit(path, weight);
        }
        if len == kmax {
            return;
        }
        let here = path[len];
        let back = if len >= 1 { Some(path[len - 1]) } else { None };
        for &(next, w) in &out[here] {
            if Some(next) == back {
                continue;
            }
            path.push(next);
            dfs(out, path, weight * w, kmax, visit);
            path.pop();
        }
    }

    for i in 0..n {
        let mut path = vec![i];
        dfs(&out, &mut path, 1.0, kmax, &mut visit);
    }
    Ok(())
}

/// `p_0, …, p_kmax` by exhaustive enumeration; `p_0 = I`.
pub fn enumerate_static_nbt(g: &WeightedGraph, kmax: usize) -> Result<Vec<DenseMatrix>> {
    let n = g.n();
    let mut p = vec![DenseMatrix::zeros(n, n); kmax + 1];
    p[0] = DenseMatrix::identity(n, n);
    visit_static_nbt(g, kmax, |path, w| {
        let k = path.len() - 1;
        p[k][(path[0], path[k])] += w;
    })?;
    Ok(p)
}

/// Every nonbacktracking walk of exactly `len ≥ 1` edges.
pub fn static_nbt_walks(g: &WeightedGraph, len: usize) -> Result<Vec<WalkRecord>> {
    let mut out = Vec::new();
    visit_static_nbt(g, len, |path, weight| {
        if path.len() == len + 1 {
            out.push(WalkRecord {
                nodes: path.to_vec(),
                weight,
            });
        }
    })?;
    Ok(out)
}

/// Whether `regime` lets an edge at snapshot `s1` be followed by the edge
/// at `s2 ≥ s1`. Only the consecutive pair is inspected.
fn pair_permitted(
    regime: BacktrackRegime,
    s1: usize,
    e: (usize, usize),
    s2: usize,
    f: (usize, usize),
) -> bool {
    if e.1 != f.0 {
        return false;
    }
    let reverses = f.1 == e.0;
    if !reverses {
        return true;
    }
    if s1 == s2 {
        !regime.forbids_space()
    } else {
        !regime.forbids_time()
    }
}

/// Visits every permitted temporal walk of `1..=kmax+1` edges, each edge
/// labeled by the snapshot it is taken in, with non-decreasing labels.
pub fn visit_temporal<F: FnMut(&[(usize, usize)], f64)>(
    tg: &TemporalGraph,
    regime: BacktrackRegime,
    kmax: usize,
    mut visit: F,
) -> Result<()> {
    // every (snapshot, edge) pair, in snapshot order
    let labeled: Vec<(usize, usize, (usize, usize), f64)> = tg
        .snapshots()
        .iter()
        .enumerate()
        .flat_map(|(s, g)| {
            g.edges()
                .iter()
                .enumerate()
                .map(move |(k, e)| (s, k, (e.src, e.dst), e.weight))
        })
        .collect();
    let succ: Vec<Vec<usize>> = labeled
        .iter()
        .map(|&(s1, _, e, _)| {
            labeled
                .iter()
                .enumerate()
                .filter(|&(_, &(s2, _, f, _))| s2 >= s1 && pair_permitted(regime, s1, e, s2, f))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    guard(&succ, kmax + 1)?;

    fn dfs<F: FnMut(&[(usize, usize)], f64)>(
        labeled: &[(usize, usize, (usize, usize), f64)],
        succ: &[Vec<usize>],
        at: usize,
        path: &mut Vec<(usize, usize)>,
        weight: f64,
        kmax: usize,
        visit: &mut F,
    ) {
        visit(path, weight);
        if path.len() == kmax + 1 {
            return;
        }
        for &j in &succ[at] {
            let (s, k, _, w) = labeled[j];
            path.push((s, k));
            dfs(labeled, succ, j, path, weight * w, kmax, visit);
            path.pop();
        }
    }

    for (i, &(s, k, _, w)) in labeled.iter().enumerate() {
        let mut path = vec![(s, k)];
        dfs(&labeled, &succ, i, &mut path, w, kmax, &mut visit);
    }
    Ok(())
}

/// `counts[k]`: weighted number of permitted walks of `k + 1` edges between
/// each ordered pair of global edges, for `k = 0..=kmax`. Global edges are
/// numbered snapshot by snapshot in canonical edge order.
pub fn enumerate_temporal(
    tg: &TemporalGraph,
    regime: BacktrackRegime,
    kmax: usize,
) -> Result<Vec<DenseMatrix>> {
    let mut offsets = vec![0];
    for g in tg.snapshots() {
        offsets.push(offsets.last().unwrap() + g.m());
    }
    let m = *offsets.last().unwrap();
    let mut counts = vec![DenseMatrix::zeros(m, m); kmax + 1];
    visit_temporal(tg, regime, kmax, |path, w| {
        let (s0, e0) = path[0];
        let (s1, e1) = *path.last().unwrap();
        counts[path.len() - 1][(offsets[s0] + e0, offsets[s1] + e1)] += w;
    })?;
    Ok(counts)
}

/// Every permitted temporal walk of exactly `len ≥ 1` edges.
pub fn temporal_walks(
    tg: &TemporalGraph,
    regime: BacktrackRegime,
    len: usize,
) -> Result<Vec<TemporalWalkRecord>> {
    let mut out = Vec::new();
    if len == 0 {
        return Ok(out);
    }
    visit_temporal(tg, regime, len - 1, |path, weight| {
        if path.len() == len {
            out.push(TemporalWalkRecord {
                edges: path.to_vec(),
                weight,
            });
        }
    })?;
    Ok(out)
}

/// `Σ_{k ≤ kmax} tᵏ p_k 𝟏` from enumerated walks.
pub fn truncated_nbt_katz(g: &WeightedGraph, t: f64, kmax: usize) -> Result<Vec<f64>> {
    let mut x = vec![1.0; g.n()];
    visit_static_nbt(g, kmax, |path, w| {
        x[path[0]] += t.powi((path.len() - 1) as i32) * w;
    })?;
    Ok(x)
}
