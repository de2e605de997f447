//! Edge-count upper bound on the permanent of an adjacency matrix, checked
//! against random 8-vertex graphs with an even number of edges.
//!
//! ```bash
//! cargo run --example permanent_bound
//! ```

use photonperm::graphlib::{erdos_renyi, perm_upper_bound};
use photonperm::numkernel::permanent_integer;

fn main() -> photonperm::Result<()> {
    let mut seed = 0;
    for p in [0.3, 0.5, 0.7, 0.9] {
        let g = loop {
            seed += 1;
            let g = erdos_renyi(8, p, seed)?;
            if g.edge_count() % 2 == 0 {
                break g;
            }
        };
        let edges = g.edge_count();
        let per = permanent_integer(&g.adjacency_rows())?;
        println!(
            "n = 8, {edges:>2} edges: Per = {per:>5}, bound = {:.1}",
            perm_upper_bound(8, edges)?
        );
    }
    Ok(())
}
