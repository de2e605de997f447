//! Encode a matrix as the top-left block of a unitary and decompose that
//! unitary into a beamsplitter mesh.
//!
//! ```bash
//! cargo run --example encode_circuit
//! ```

use photonperm::encoder::{decompose_mesh, encode};
use photonperm::numkernel::ComplexMatrix;

fn main() -> photonperm::Result<()> {
    let a = ComplexMatrix::from_real_rows(&[[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])?;
    let circuit = encode(&a)?;
    println!("modes:            {}", circuit.mode_count);
    println!("scale s:          {:.6}", circuit.scale);
    println!("unitarity error:  {:.3e}", circuit.unitary.unitarity_error());
    let block = circuit.encoded_block().scale_real(circuit.scale);
    println!("block * s - A:    {:.3e}", block.max_abs_diff(&a));

    let mesh = decompose_mesh(&circuit.unitary)?;
    println!("mesh elements:    {}", mesh.elements.len());
    println!("recompose error:  {:.3e}", mesh.recompose().max_abs_diff(&circuit.unitary));
    Ok(())
}
