//! Edge-route centralities for general coefficient series.

use nbtwalk::edge::{edge_centrality, CoefficientSeries, EdgeCentralityPlan};
use nbtwalk::rank::format_g12;
use nbtwalk::WeightedGraph;

fn main() -> nbtwalk::Result<()> {
    let g = WeightedGraph::from_edges(
        4,
        &[
            (0, 1, 1.0),
            (1, 2, 1.0),
            (2, 0, 1.0),
            (2, 3, 2.0),
            (3, 2, 2.0),
            (3, 1, 0.5),
        ],
    )?;
    let d = g.line_graph();
    let t = 0.4;

    let resolvent = EdgeCentralityPlan::new(d.clone(), CoefficientSeries::Resolvent, t, 1e-12)?;
    let exponential = EdgeCentralityPlan::new(d.clone(), CoefficientSeries::Exponential, t, 1e-12)?;
    // 1 + x + x²/2, a truncated exponential with no tail
    let quadratic = CoefficientSeries::custom(vec![1.0, 1.0, 0.5], f64::INFINITY, 0.0)?;
    let quadratic = EdgeCentralityPlan::new(d, quadratic, t, 1e-12)?;

    let cols = [&resolvent, &exponential, &quadratic].map(edge_centrality);
    println!(
        "t limit for the resolvent: {}",
        format_g12(resolvent.t_limit())
    );
    println!("node  resolvent       exponential     quadratic");
    for i in 0..g.n() {
        let row: Vec<String> = cols
            .iter()
            .map(|c| format!("{:<15}", format_g12(c.as_ref().unwrap()[i])))
            .collect();
        println!("{:<5} {}", g.node_labels()[i], row.join(" "));
    }
    Ok(())
}
