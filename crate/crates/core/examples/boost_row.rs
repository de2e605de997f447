//! Row-scaling boost: scale one row by w and track how the post-selection
//! probability changes relative to w = 1.
//!
//! ```bash
//! cargo run --release --example boost_row
//! ```

use photonperm::apps::{boost_row_scan, boost_row_scan_sampled, SampledConfig};
use photonperm::focksim::{BatchConfig, StoppingRule};
use photonperm::graphlib::{k5_with_pendant, k9_with_degree_two_vertex};

fn main() -> photonperm::Result<()> {
    let a = k9_with_degree_two_vertex().adjacency();
    let grid: Vec<f64> = (0..29).map(|i| 1.0 + 0.25 * f64::from(i)).collect();
    let scan = boost_row_scan(&a, 9, &grid)?;
    println!("K9 plus a degree-2 vertex, scaling its row:");
    if let Some((w, r)) = scan.max_ratio() {
        println!("  max R = {r:.4} at w = {w}");
    }
    println!("  R falls below 1 near w = {:?}", scan.crossing_w);
    println!("  last boosted grid w = {:?}", scan.last_boosted_w);

    let a6 = k5_with_pendant().adjacency();
    let ws = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
    let exact = boost_row_scan(&a6, 5, &ws)?;
    let config = SampledConfig {
        rule: StoppingRule::postselected(200),
        seed: 99,
        batch: BatchConfig::default(),
    };
    let sampled = boost_row_scan_sampled(&a6, 5, &ws, config)?;
    println!("K5 with a pendant vertex (Per = {}), scaling the pendant row:", exact.permanent);
    println!("   w       R   recovered   shots to 200 hits   sampled estimate");
    for (p, s) in exact.points.iter().zip(&sampled) {
        println!(
            "  {:>2}  {:>6.3}  {:>10.6}  {:>18}  {:>8.3}",
            p.w,
            p.ratio.unwrap_or(f64::NAN),
            p.recovered_permanent,
            s.estimation.total_samples,
            s.recovered_permanent
        );
    }
    Ok(())
}
