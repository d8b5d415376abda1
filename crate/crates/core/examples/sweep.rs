//! How the nonbacktracking ranking drifts from classical Katz as t grows.

use nbtwalk::edge::convergence_radius;
use nbtwalk::node::{katz, nbt_katz};
use nbtwalk::rank::{kendall_tau_b, top_k};
use nbtwalk::sparse::spectral_radius_default;
use nbtwalk::WeightedGraph;

fn main() -> nbtwalk::Result<()> {
    // node 0: hub of eight reciprocated leaves that lead nowhere else;
    // nodes 9..=14: a directed ring with chords, joined to the hub by one edge
    let mut edges = Vec::new();
    for leaf in 1..=8 {
        edges.push((0, leaf, 1.0));
        edges.push((leaf, 0, 1.0));
    }
    for i in 0..6 {
        edges.push((9 + i, 9 + (i + 1) % 6, 1.0));
        edges.push((9 + i, 9 + (i + 2) % 6, 1.0));
    }
    edges.push((0, 9, 1.0));
    edges.push((12, 0, 1.0));
    let g = WeightedGraph::from_edges(15, &edges)?;
    let a = g.adjacency();
    let nbt_limit = convergence_radius(&g.line_graph())?;
    let limit = nbt_limit.min(1.0 / spectral_radius_default(&a)?);
    for step in 1..=9 {
        let t = limit * step as f64 / 10.0;
        let x = nbt_katz(&a, t, 1e-12, Some(nbt_limit))?.scores;
        let y = katz(&a, t, 1e-12)?;
        let top = |s: &[f64]| -> Vec<&str> {
            top_k(s, g.node_labels(), 3)
                .into_iter()
                .map(|i| g.node_labels()[i].as_str())
                .collect()
        };
        println!(
            "t = {t:.5}  tau-b = {:+.3}  top 3 nbt {:?} classical {:?}",
            kendall_tau_b(&x, &y).unwrap_or(f64::NAN),
            top(&x),
            top(&y)
        );
    }
    Ok(())
}
