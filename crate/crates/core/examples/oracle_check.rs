//! Runs the identity battery on a small graph, then again with one edge
//! weight tampered on the line-graph side.

use nbtwalk::oracle::check::{check_static, check_temporal, CheckOptions};
use nbtwalk::{TemporalGraph, WeightedGraph};

fn main() -> nbtwalk::Result<()> {
    let g = WeightedGraph::from_edges(
        4,
        &[
            (0, 1, 0.7),
            (1, 2, 1.3),
            (2, 0, 1.1),
            (2, 3, 0.6),
            (3, 2, 1.9),
            (3, 0, 0.8),
        ],
    )?;
    let opts = CheckOptions::default();
    for r in check_static(&g, &g.line_graph(), &opts)? {
        println!("{r}");
    }
    println!("\nwith edge 0 tampered:");
    let tampered = g.line_graph().with_tampered_weight(0, 5.0);
    for r in check_static(&g, &tampered, &opts)? {
        println!("{r}");
    }

    println!("\ntemporal:");
    let tg = TemporalGraph::from_edge_lists(
        3,
        &[
            vec![(0, 1, 2.0), (1, 0, 1.0)],
            vec![(1, 2, 1.0), (2, 1, 3.0)],
        ],
    )?;
    for r in check_temporal(&tg, &opts)? {
        println!("{r}");
    }
    Ok(())
}
