use serde::{Deserialize, Serialize};

use super::Backend;
use crate::encoder::{build_subgraph_block, encode};
use crate::error::{Error, Result};
use crate::focksim::{full_distribution, outcome_probability, Sampler};
use crate::graphlib::{anchored_subsets, Graph};
use crate::numkernel::permanent_exact;

/// Mode budget for the block circuit (`2kJ` modes for `J` candidates).
pub const MAX_BLOCK_MODES: usize = 256;

/// Relative resolution at which exact probabilities count as tied.
const TIE_RESOLUTION: f64 = 1e-9;

/// Candidates of a densest-subgraph completion, scored by the block circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgraphRanking {
    pub k: usize,
    pub anchors: Vec<usize>,
    /// Fraction of the subgraph fixed classically, `|anchors| / k`.
    pub rho: f64,
    /// Sorted vertex lists in lexicographic order.
    pub candidates: Vec<Vec<usize>>,
    pub edge_counts: Vec<usize>,
    /// `|Per(A_S)|` per candidate.
    pub permanents: Vec<f64>,
    /// Exact probability of each candidate's output pattern.
    pub probabilities: Vec<f64>,
    /// Post-selected hits per candidate (sampled backend only).
    pub counts: Option<Vec<u64>>,
    pub total_samples: Option<u64>,
    /// Candidate indices, best first.
    pub order: Vec<usize>,
    pub modes: usize,
    pub scale: f64,
    pub backend: Backend,
}

impl SubgraphRanking {
    pub fn top(&self) -> &[usize] {
        &self.candidates[self.order[0]]
    }
}

/// Completes the anchor set to `k` vertices by scoring every completion with
/// the block-encoded circuit.
///
/// Candidate `S_j` is detected with probability
/// `|Per(A_S_j)|^2 / sigma_max(K)^(2k)`. The exact backend ranks by these
/// probabilities, the sampled backend by post-selected counts; ties keep
/// lexicographic candidate order.
pub fn dense_subgraph_complete(g: &Graph, k: usize, anchors: &[usize], backend: Backend) -> Result<SubgraphRanking> {
    if anchors.len() >= k {
        return Err(Error::Domain(format!(
            "{} anchors leave nothing to complete for k = {k}",
            anchors.len()
        )));
    }
    if k > g.n() {
        return Err(Error::Domain(format!("k = {k} exceeds the {} vertices", g.n())));
    }
    let candidates = anchored_subsets(g.n(), k, anchors)?;
    let j = candidates.len();
    let modes = 2 * k * j;
    if modes > MAX_BLOCK_MODES {
        return Err(Error::ModeBudget {
            candidates: j,
            modes,
            budget: MAX_BLOCK_MODES,
        });
    }
    let a = g.adjacency();
    let block = build_subgraph_block(&a, &candidates)?;
    let mut circuit = encode(&block.k_matrix)?;
    circuit.photon_count = k;
    let probabilities = block
        .outputs
        .iter()
        .map(|out| outcome_probability(&circuit, &block.input, out))
        .collect::<Result<Vec<f64>>>()?;
    let permanents = candidates
        .iter()
        .map(|c| Ok(permanent_exact(&a.select(c, c))?.norm()))
        .collect::<Result<Vec<f64>>>()?;

    let mut order: Vec<usize> = (0..j).collect();
    let (counts, total_samples) = match backend {
        Backend::Exact => {
            let top = probabilities.iter().copied().fold(0.0, f64::max);
            let key = |p: f64| if top > 0.0 { (p / top / TIE_RESOLUTION).round() as u64 } else { 0 };
            order.sort_by_key(|&i| std::cmp::Reverse(key(probabilities[i])));
            (None, None)
        }
        Backend::Sampled(cfg) => {
            let dist = full_distribution(&circuit, &block.input)?;
            let targets = block
                .outputs
                .iter()
                .map(|o| {
                    dist.index_of(o)
                        .ok_or_else(|| Error::Domain(format!("pattern {o} missing from distribution")))
                })
                .collect::<Result<Vec<usize>>>()?;
            let (run, per) = Sampler::new(&dist, cfg.batch)?.postselect_any(&targets, cfg.rule, cfg.seed)?;
            order.sort_by_key(|&i| std::cmp::Reverse(per[i]));
            (Some(per), Some(run.shots))
        }
    };
    Ok(SubgraphRanking {
        k,
        anchors: anchors.to_vec(),
        rho: anchors.len() as f64 / k as f64,
        edge_counts: candidates.iter().map(|c| g.induced_edge_count(c)).collect(),
        candidates,
        permanents,
        probabilities,
        counts,
        total_samples,
        order,
        modes,
        scale: circuit.scale,
        backend,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::focksim::StoppingRule;

    #[test]
    fn k5_ties_keep_lexicographic_order() {
        let r = dense_subgraph_complete(&Graph::complete(5), 3, &[0], Backend::Exact).unwrap();
        assert_eq!(r.candidates.len(), 6);
        assert_eq!(r.order, (0..6).collect::<Vec<_>>());
        assert_eq!(r.top(), &[0, 1, 2]);
        assert!((r.rho - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn unique_triangle_is_found() {
        // triangle 0-1-2 plus a path 2-3-4-5 and a pendant 0-5
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let r = dense_subgraph_complete(&g, 3, &[1], Backend::Exact).unwrap();
        assert_eq!(r.top(), &[0, 1, 2]);
        assert_eq!(r.edge_counts[r.order[0]], 3);
    }

    #[test]
    fn probabilities_follow_permanents() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let r = dense_subgraph_complete(&g, 3, &[2], Backend::Exact).unwrap();
        let s = r.scale.powi(2 * 3);
        for (p, per) in r.probabilities.iter().zip(&r.permanents) {
            assert!((p * s - per * per).abs() < 1e-9);
        }
    }

    #[test]
    fn mode_budget() {
        let err = dense_subgraph_complete(&Graph::complete(12), 4, &[0], Backend::Exact).unwrap_err();
        assert!(matches!(err, Error::ModeBudget { candidates: 165, .. }));
        assert!(dense_subgraph_complete(&Graph::complete(4), 2, &[0, 1], Backend::Exact).is_err());
    }

    #[test]
    fn sampled_ranking_prefers_triangle() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let b = Backend::sampled(StoppingRule::postselected(400), 6);
        let r = dense_subgraph_complete(&g, 3, &[0], b).unwrap();
        assert_eq!(r.top(), &[0, 1, 2]);
        assert_eq!(r.counts.as_ref().unwrap().iter().sum::<u64>(), 400);
    }
}
