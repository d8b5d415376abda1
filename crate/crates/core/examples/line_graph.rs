//! The edge-level objects: source/target incidence, the weighted Hashimoto
//! matrix and its pruned square root.

use nbtwalk::edge::convergence_radius;
use nbtwalk::sparse::spectral_radius_default;
use nbtwalk::WeightedGraph;

fn main() -> nbtwalk::Result<()> {
    let g = WeightedGraph::from_edges(3, &[(0, 1, 4.0), (1, 0, 1.0), (1, 2, 2.0), (2, 0, 0.5)])?;
    let d = g.line_graph();
    for (i, e) in d.edges().iter().enumerate() {
        println!("edge {i}: {} -> {} (w = {})", e.src, e.dst, e.weight);
    }
    println!("\nV =\n{}", d.v().to_dense());
    println!("W^(1/2) =\n{}", d.line_sqrt().to_dense());
    println!("rho(V) = {:.6}", spectral_radius_default(d.v())?);
    println!(
        "rho(W^(1/2)) = {:.6}",
        spectral_radius_default(&d.line_sqrt())?
    );
    println!(
        "convergence radius 1/rho(V) = {:.6}",
        convergence_radius(&d)?
    );
    Ok(())
}
