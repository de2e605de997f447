//! Exact output distribution and seeded sampling of a two-photon
//! interferometer (Hong-Ou-Mandel dip on a balanced beamsplitter).
//!
//! ```bash
//! cargo run --example output_distribution
//! ```

use num_complex::Complex64;
use photonperm::encoder::EncodedCircuit;
use photonperm::focksim::{full_distribution, sample, OutcomePattern};
use photonperm::numkernel::ComplexMatrix;

fn main() -> photonperm::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let u = ComplexMatrix::from_vec(
        2,
        2,
        [h, h, h, -h].iter().map(|&x| Complex64::new(x, 0.0)).collect(),
    )?;
    let circuit = EncodedCircuit::from_unitary(u, 2)?;
    let input = OutcomePattern::new(vec![1, 1]);

    let dist = full_distribution(&circuit, &input)?;
    for (pattern, p) in dist.iter() {
        println!("P({pattern}) = {p:.6}");
    }

    let shots = sample(&circuit, &input, 100_000, 7)?;
    println!("100000 shots, seed 7:");
    for (pattern, count) in &shots.counts {
        println!("  {pattern}: {count}");
    }
    Ok(())
}
