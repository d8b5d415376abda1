//! The four backtracking regimes on a three-snapshot sequence.

use nbtwalk::edge::CoefficientSeries;
use nbtwalk::temporal::{build_global, temporal_f_centrality, temporal_walk_counts, TemporalRadii};
use nbtwalk::{BacktrackRegime, TemporalGraph};

fn main() -> nbtwalk::Result<()> {
    let tg = TemporalGraph::from_edge_lists(
        4,
        &[
            vec![(0, 1, 1.0), (1, 0, 1.0), (1, 2, 1.0)],
            vec![(2, 1, 1.0), (1, 0, 2.0), (2, 3, 1.0)],
            vec![(3, 2, 1.0), (0, 1, 1.0), (1, 3, 1.0)],
        ],
    )?;
    println!(
        "{} snapshots, {} edges in total",
        tg.len(),
        tg.total_edges()
    );
    for regime in BacktrackRegime::ALL {
        let gd = build_global(&tg, regime)?;
        let radii = TemporalRadii::compute(&tg, regime)?;
        let walks: Vec<f64> = (0..4)
            .map(|k| {
                temporal_walk_counts(&gd, k).map(|c| c.values().iter().fold(0.0, |s, v| s + v))
            })
            .collect::<nbtwalk::Result<_>>()?;
        let t = 0.5 * radii.nbt_limit().min(1.0);
        let v = temporal_f_centrality(&gd, &CoefficientSeries::Resolvent, t, 1e-12)?;
        println!(
            "{regime:<13} rho(M) = {:.4}  walks by length {walks:?}  centrality at t = {t:.3}: {v:.4?}",
            radii.rho_m
        );
    }
    Ok(())
}
