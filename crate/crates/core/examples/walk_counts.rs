//! Nonbacktracking walk sums three ways: the node-level recurrence, the
//! line-graph projection, and brute-force enumeration.

use nbtwalk::edge::project_pk;
use nbtwalk::node::pk_recurrence;
use nbtwalk::oracle::{enumerate_static_nbt, static_nbt_walks};
use nbtwalk::WeightedGraph;

fn main() -> nbtwalk::Result<()> {
    let g = WeightedGraph::from_edges(
        4,
        &[
            (0, 1, 1.0),
            (1, 0, 2.0),
            (1, 2, 1.0),
            (2, 0, 3.0),
            (2, 3, 1.0),
            (3, 1, 1.0),
        ],
    )?;
    let kmax = 5;
    let rec = pk_recurrence(&g.adjacency(), kmax)?;
    let oracle = enumerate_static_nbt(&g, kmax)?;
    let d = g.line_graph();
    for k in 1..=kmax {
        let proj = project_pk(&d, k - 1)?.to_dense();
        println!(
            "k = {k}: total {:>6}  recurrence diff {:.1e}  projection diff {:.1e}",
            oracle[k].sum(),
            (rec[k].to_dense() - &oracle[k]).amax(),
            (proj - &oracle[k]).amax()
        );
    }

    println!("\nnonbacktracking walks of length 3:");
    for w in static_nbt_walks(&g, 3)? {
        println!("  {:?}  weight {}", w.nodes, w.weight);
    }
    Ok(())
}
