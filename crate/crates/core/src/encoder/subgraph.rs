use crate::error::{Error, Result};
use crate::focksim::OutcomePattern;
use crate::numkernel::ComplexMatrix;

/// Block matrix `K` stacking the candidate principal submatrices of `A` in
/// its first `k` columns, with the photon patterns used to sample it.
#[derive(Debug, Clone)]
pub struct SubgraphBlock {
    /// `kJ x kJ`; rows `j*k..(j+1)*k`, columns `0..k` hold `A[S_j, S_j]`.
    pub k_matrix: ComplexMatrix,
    /// `k` photons in modes `0..k` of the `2kJ`-mode encoded circuit.
    pub input: OutcomePattern,
    /// Output `j` has one photon in each mode of `j*k..(j+1)*k`.
    pub outputs: Vec<OutcomePattern>,
    pub subset_size: usize,
}

/// Builds `K` for the candidate vertex subsets (0-indexed, each of size `k`).
///
/// Patterns are sized for the dilated circuit, i.e. `2kJ` modes.
pub fn build_subgraph_block(a: &ComplexMatrix, candidates: &[Vec<usize>]) -> Result<SubgraphBlock> {
    let n = a.order()?;
    let k = candidates
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::Domain("at least one candidate subset is required".into()))?;
    if k == 0 {
        return Err(Error::Domain("candidate subsets must be non-empty".into()));
    }
    for (j, c) in candidates.iter().enumerate() {
        if c.len() != k {
            return Err(Error::Domain(format!(
                "candidate {j} has {} vertices, expected {k}",
                c.len()
            )));
        }
        let mut sorted = c.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("candidate {j} repeats a vertex")));
        }
        if let Some(&v) = sorted.last().filter(|&&v| v >= n) {
            return Err(Error::Domain(format!("candidate {j} names vertex {v} outside 0..{n}")));
        }
    }
    let jcount = candidates.len();
    let dim = k * jcount;
    let mut kmat = ComplexMatrix::zeros(dim, dim);
    for (j, c) in candidates.iter().enumerate() {
        kmat.set_block(j * k, 0, &a.select(c, c));
    }
    let modes = 2 * dim;
    Ok(SubgraphBlock {
        k_matrix: kmat,
        input: OutcomePattern::leading_ones(modes, k),
        outputs: (0..jcount)
            .map(|j| OutcomePattern::ones_in(modes, j * k..(j + 1) * k))
            .collect(),
        subset_size: k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn sample_matrix() -> ComplexMatrix {
        ComplexMatrix::from_fn(4, 4, |i, j| Complex64::new((10 * i + j) as f64, 0.0))
    }

    #[test]
    fn single_candidate_is_leading_minor() {
        let a = sample_matrix();
        let b = build_subgraph_block(&a, &[vec![0, 1]]).unwrap();
        let mut expected = ComplexMatrix::zeros(2, 2);
        expected.set_block(0, 0, &a.block(0, 0, 2, 2));
        assert_eq!(b.k_matrix, expected);
        assert_eq!(b.input.occupations(), &[1, 1, 0, 0]);
        assert_eq!(b.outputs[0].occupations(), &[1, 1, 0, 0]);
    }

    #[test]
    fn two_candidates_stack() {
        let a = sample_matrix();
        let b = build_subgraph_block(&a, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(b.k_matrix.rows(), 4);
        assert_eq!(b.k_matrix.block(0, 0, 2, 2), a.select(&[0, 1], &[0, 1]));
        assert_eq!(b.k_matrix.block(2, 0, 2, 2), a.select(&[2, 3], &[2, 3]));
        assert_eq!(b.k_matrix.block(0, 2, 4, 2), ComplexMatrix::zeros(4, 2));
        assert_eq!(b.outputs[1].occupations(), &[0, 0, 1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn rejects_bad_candidates() {
        let a = sample_matrix();
        assert!(build_subgraph_block(&a, &[vec![0, 1], vec![2]]).is_err());
        assert!(build_subgraph_block(&a, &[vec![1, 1]]).is_err());
        assert!(build_subgraph_block(&a, &[vec![1, 4]]).is_err());
        assert!(build_subgraph_block(&a, &[]).is_err());
    }
}
