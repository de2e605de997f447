//! Mean exact and estimated permanents of random 6-vertex graphs at several
//! edge probabilities, 500 post-selected events per graph.
//!
//! ```bash
//! cargo run --release --example random_graph_table
//! ```

use photonperm::focksim::{BatchConfig, StoppingRule};
use photonperm::harness::table1_experiment;

fn main() -> photonperm::Result<()> {
    let p_grid = [0.70, 0.78, 0.86, 0.94, 1.00];
    let report = table1_experiment(&p_grid, 4, 6, StoppingRule::postselected(500), 1, BatchConfig::default())?;
    print!("{}", report.render());
    for row in &report.rows {
        println!("p = {:.2}: mean estimate inside band: {}", row.p, row.estimate_within_band());
    }
    Ok(())
}
