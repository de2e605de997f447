//! Recover the coefficients of Per(xI - M) for the adjacency and Laplacian
//! matrices of a small graph from n + 1 evaluations.
//!
//! ```bash
//! cargo run --example permanental_polynomial
//! ```

use photonperm::apps::{permanental_polynomial, Backend, MatrixFamily};
use photonperm::graphlib::Graph;

fn main() -> photonperm::Result<()> {
    let g = Graph::complete(3);
    for family in [MatrixFamily::Adjacency, MatrixFamily::Laplacian] {
        let r = permanental_polynomial(&g, family, Backend::Exact, None, 5)?;
        let coeffs: Vec<String> = r.coefficients.iter().map(|c| format!("{c:.6}")).collect();
        println!("K3 {family}: c_0..c_3 = [{}]", coeffs.join(", "));
        println!("  points {:?}", r.points);
        println!("  condition {:.3e}, residual {:.3e}", r.condition, r.residual);
        println!("  P(-1.5) = {:.6}", r.evaluate(-1.5));
    }
    Ok(())
}
