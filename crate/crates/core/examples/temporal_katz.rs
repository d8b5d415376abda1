//! Classical temporal Katz equals the allow-all temporal resolvent.

use nbtwalk::edge::CoefficientSeries;
use nbtwalk::temporal::{
    build_global, classical_temporal_katz, permitted_t_range, temporal_f_centrality,
};
use nbtwalk::{BacktrackRegime, TemporalGraph};

fn main() -> nbtwalk::Result<()> {
    let tg = TemporalGraph::from_edge_lists(
        3,
        &[
            vec![(0, 1, 1.0), (1, 2, 1.0)],
            vec![(2, 0, 1.0), (1, 0, 1.0)],
            vec![(0, 2, 1.0)],
        ],
    )?;
    let range = permitted_t_range(&tg, None)?;
    let t = 0.3f64.min(0.5 * range.end);
    let classical = classical_temporal_katz(&tg, t, 1e-12)?;
    let gd = build_global(&tg, BacktrackRegime::AllowAll)?;
    let resolvent = temporal_f_centrality(&gd, &CoefficientSeries::Resolvent, t, 1e-12)?;
    println!("t = {t}");
    println!("classical: {classical:.12?}");
    println!("allow-all: {resolvent:.12?}");
    let nbt = build_global(&tg, BacktrackRegime::ForbidAll)?;
    println!(
        "forbid-all: {:.12?}",
        temporal_f_centrality(&nbt, &CoefficientSeries::Resolvent, t, 1e-12)?
    );
    Ok(())
}
