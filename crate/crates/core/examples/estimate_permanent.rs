//! Estimate |Per(A)| by post-selecting on the all-ones pattern and compare
//! with the exact value.
//!
//! ```bash
//! cargo run --release --example estimate_permanent
//! ```

use photonperm::focksim::{estimate_abs_permanent, StoppingRule};
use photonperm::graphlib::Graph;
use photonperm::numkernel::permanent_integer;

fn main() -> photonperm::Result<()> {
    for n in [3, 4] {
        let g = Graph::complete(n);
        let exact = permanent_integer(&g.adjacency_rows())?;
        let fixed = estimate_abs_permanent(&g.adjacency(), StoppingRule::fixed(100_000), 11)?;
        let target = estimate_abs_permanent(&g.adjacency(), StoppingRule::postselected(2_000), 11)?;
        println!("K{n}: exact {exact}");
        for (label, est) in [("100000 shots", fixed), ("2000 hits", target)] {
            println!(
                "  {label:>12}: {:.4}  95% CI [{:.4}, {:.4}]  ({} shots, {} hits)",
                est.abs_permanent_estimate,
                est.confidence_interval.0,
                est.confidence_interval.1,
                est.total_samples,
                est.postselected_count
            );
        }
    }
    Ok(())
}
