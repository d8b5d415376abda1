#![allow(dead_code)]

use nbtwalk::{TemporalGraph, WeightedGraph};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Each ordered pair `i ≠ j` is an edge with probability `p`, weight
/// uniform in `weights`.
pub fn random_digraph(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: f64,
    weights: (f64, f64),
) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                edges.push((i, j, rng.gen_range(weights.0..=weights.1)));
            }
        }
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

/// Integer weights in `1..=max`, so walk sums are exact.
pub fn random_integer_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64, max: u32) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                edges.push((i, j, rng.gen_range(1..=max) as f64));
            }
        }
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

pub fn random_binary_symmetric(rng: &mut ChaCha8Rng, n: usize, p: f64) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j, 1.0));
                edges.push((j, i, 1.0));
            }
        }
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

pub fn random_binary_directed(rng: &mut ChaCha8Rng, n: usize, p: f64) -> WeightedGraph {
    let g = random_digraph(rng, n, p, (1.0, 1.0));
    g.binarized()
}

/// At most one direction per node pair.
pub fn random_reciprocation_free(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: f64,
    weights: (f64, f64),
) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                let w = rng.gen_range(weights.0..=weights.1);
                if rng.gen_bool(0.5) {
                    edges.push((i, j, w));
                } else {
                    edges.push((j, i, w));
                }
            }
        }
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

pub fn random_temporal(
    rng: &mut ChaCha8Rng,
    snapshots: usize,
    n: usize,
    p: f64,
    weights: (f64, f64),
) -> TemporalGraph {
    let lists: Vec<Vec<(usize, usize, f64)>> = (0..snapshots)
        .map(|_| {
            random_digraph(rng, n, p, weights)
                .edges()
                .iter()
                .map(|e| (e.src, e.dst, e.weight))
                .collect()
        })
        .collect();
    TemporalGraph::from_edge_lists(n, &lists).unwrap()
}

pub fn random_integer_temporal(
    rng: &mut ChaCha8Rng,
    snapshots: usize,
    n: usize,
    p: f64,
    max: u32,
) -> TemporalGraph {
    let lists: Vec<Vec<(usize, usize, f64)>> = (0..snapshots)
        .map(|_| {
            random_integer_digraph(rng, n, p, max)
                .edges()
                .iter()
                .map(|e| (e.src, e.dst, e.weight))
                .collect()
        })
        .collect();
    TemporalGraph::from_edge_lists(n, &lists).unwrap()
}

fn dedup_edges(n: usize, raw: Vec<(usize, usize, f64)>) -> WeightedGraph {
    let mut seen = std::collections::HashSet::new();
    let edges: Vec<_> = raw
        .into_iter()
        .filter(|&(i, j, _)| i != j && seen.insert((i, j)))
        .collect();
    WeightedGraph::from_edges(n, &edges).unwrap()
}

/// Weighted digraphs on up to `max_n` nodes.
pub fn arb_digraph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0.5f64..2.0), 0..=n * n)
            .prop_map(move |raw| dedup_edges(n, raw))
    })
}

/// Digraphs with small integer weights.
pub fn arb_integer_digraph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 1u8..=3), 0..=n * n).prop_map(move |raw| {
            dedup_edges(
                n,
                raw.into_iter().map(|(i, j, w)| (i, j, w as f64)).collect(),
            )
        })
    })
}

/// Temporal graphs with up to `max_snapshots` snapshots on up to `max_n`
/// nodes.
pub fn arb_temporal(max_snapshots: usize, max_n: usize) -> impl Strategy<Value = TemporalGraph> {
    (1..=max_snapshots, 1..=max_n).prop_flat_map(|(s, n)| {
        prop::collection::vec(
            prop::collection::vec((0..n, 0..n, 1u8..=3), 0..=n * n / 2),
            s,
        )
        .prop_map(move |snaps| {
            let lists: Vec<Vec<(usize, usize, f64)>> = snaps
                .into_iter()
                .map(|raw| {
                    dedup_edges(
                        n,
                        raw.into_iter().map(|(i, j, w)| (i, j, w as f64)).collect(),
                    )
                    .edges()
                    .iter()
                    .map(|e| (e.src, e.dst, e.weight))
                    .collect()
                })
                .collect();
            TemporalGraph::from_edge_lists(n, &lists).unwrap()
        })
    })
}

/// Largest eigenvalue modulus from a dense Schur form, `None` if the QR
/// iteration does not converge.
pub fn dense_spectral_radius(m: &nbtwalk::sparse::DenseMatrix) -> Option<f64> {
    nalgebra::Schur::try_new(m.clone(), f64::EPSILON, 10_000).map(|s| {
        s.complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    })
}
