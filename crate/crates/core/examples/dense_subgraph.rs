//! Rank the 3-vertex subgraphs through an anchor vertex by the
//! post-selection frequency of their block patterns.
//!
//! ```bash
//! cargo run --release --example dense_subgraph
//! ```

use photonperm::apps::{dense_subgraph_complete, Backend};
use photonperm::focksim::StoppingRule;
use photonperm::graphlib::{densest_k_subgraph_containing, Graph};

fn main() -> photonperm::Result<()> {
    // One triangle {0, 1, 2} plus a tail through vertex 0.
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (4, 5)])?;
    let (best, edges) = densest_k_subgraph_containing(&g, 3, &[0])?;
    println!("brute force: {best:?} with {edges} edges");

    for backend in [Backend::Exact, Backend::sampled(StoppingRule::postselected(2_000), 17)] {
        let r = dense_subgraph_complete(&g, 3, &[0], backend)?;
        println!(
            "{} backend: {} candidates on {} modes",
            if r.backend.is_exact() { "exact" } else { "sampled" },
            r.candidates.len(),
            r.modes
        );
        for &i in r.order.iter().take(4) {
            let count = r.counts.as_ref().map_or(String::new(), |c| format!("  count {}", c[i]));
            println!(
                "  {:?}: edges {}  |Per| {:.3}  p {:.3e}{count}",
                r.candidates[i], r.edge_counts[i], r.permanents[i], r.probabilities[i]
            );
        }
    }
    Ok(())
}
