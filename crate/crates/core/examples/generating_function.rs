//! Phi(t) from the node-level Psi(t), from the line graph, and from the
//! closed form for undirected unweighted graphs.

use nbtwalk::edge::{convergence_radius, phi_via_linegraph};
use nbtwalk::node::{limiting, phi_dense, NbtNodeSystem};
use nbtwalk::WeightedGraph;

fn main() -> nbtwalk::Result<()> {
    // unweighted undirected 4-cycle with a chord
    let und: Vec<(usize, usize, f64)> = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
        .iter()
        .flat_map(|&(i, j)| [(i, j, 1.0), (j, i, 1.0)])
        .collect();
    let g = WeightedGraph::from_edges(4, &und)?;
    let a = g.adjacency();
    let d = g.line_graph();
    let r = convergence_radius(&d)?;
    let t = 0.5 * r;

    let node = phi_dense(&a, t, Some(r))?;
    let edge = phi_via_linegraph(&d, t)?;
    let closed = limiting::phi_unweighted_undirected(&a, t)?;
    println!(
        "t = {t:.6}, first elementwise pole at {:.6}",
        NbtNodeSystem::first_pole(&a)?
    );
    println!("Phi(t) =\n{node}");
    println!("node vs edge route: {:.2e}", (&node - &edge).amax());
    println!("node vs closed form: {:.2e}", (&node - &closed).amax());
    Ok(())
}
