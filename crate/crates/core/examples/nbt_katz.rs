//! Nonbacktracking Katz against classical Katz on a small weighted digraph.

use nbtwalk::edge::convergence_radius;
use nbtwalk::node::{katz, nbt_katz};
use nbtwalk::rank::{format_g12, kendall_tau_b, ranks};
use nbtwalk::sparse::spectral_radius_default;
use nbtwalk::WeightedGraph;

fn main() -> nbtwalk::Result<()> {
    // a hub with reciprocated spokes plus a directed 4-cycle on the rim
    let edges = [
        (0, 1, 2.0),
        (1, 0, 2.0),
        (0, 2, 1.5),
        (2, 0, 1.5),
        (0, 3, 1.0),
        (3, 0, 1.0),
        (1, 2, 1.0),
        (2, 3, 1.0),
        (3, 4, 1.0),
        (4, 1, 1.0),
    ];
    let g = WeightedGraph::from_edges(5, &edges)?;
    let a = g.adjacency();

    let nbt_limit = convergence_radius(&g.line_graph())?;
    let classical_limit = 1.0 / spectral_radius_default(&a)?;
    println!("t limits: nonbacktracking {nbt_limit:.6}, classical {classical_limit:.6}");

    let t = 0.9 * classical_limit.min(nbt_limit);
    let x = nbt_katz(&a, t, 1e-12, Some(nbt_limit))?.scores;
    let y = katz(&a, t, 1e-12)?;
    let (rx, ry) = (ranks(&x, g.node_labels()), ranks(&y, g.node_labels()));
    println!("node  nbt-katz        rank  katz            rank");
    for i in 0..g.n() {
        println!(
            "{:<5} {:<15} {:<5} {:<15} {}",
            g.node_labels()[i],
            format_g12(x[i]),
            rx[i],
            format_g12(y[i]),
            ry[i]
        );
    }
    println!("kendall tau-b: {:?}", kendall_tau_b(&x, &y));
    Ok(())
}
