//! Count perfect matchings of bipartite graphs via the permanent of the
//! biadjacency block.
//!
//! ```bash
//! cargo run --release --example perfect_matchings
//! ```

use photonperm::apps::{perfect_matchings, Backend};
use photonperm::focksim::StoppingRule;
use photonperm::graphlib::{count_perfect_matchings_bruteforce, Graph};

fn main() -> photonperm::Result<()> {
    let graphs = [
        ("C6", Graph::cycle(6)),
        ("K3,3", Graph::complete_bipartite(3, 3)),
        ("P4", Graph::path(4)),
    ];
    for (name, g) in &graphs {
        let exact = perfect_matchings(g, Backend::Exact)?;
        let sampled = perfect_matchings(g, Backend::sampled(StoppingRule::postselected(1_000), 3))?;
        let ci = sampled.matchings_interval.unwrap_or_default();
        println!(
            "{name:>5}: exact {}  brute force {}  sampled {:.3} (CI [{:.3}, {:.3}])",
            exact.matchings,
            count_perfect_matchings_bruteforce(g)?,
            sampled.matchings,
            ci.0,
            ci.1
        );
    }
    match perfect_matchings(&Graph::cycle(5), Backend::Exact) {
        Err(e) => println!("   C5: {e}"),
        Ok(r) => println!("   C5: {}", r.matchings),
    }
    Ok(())
}
