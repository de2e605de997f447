use serde::{Deserialize, Serialize};

use super::Backend;
use crate::error::{Error, Result};
use crate::focksim::EstimationResult;
use crate::graphlib::Graph;
use crate::numkernel::permanent_integer;

/// Perfect-matching count of a balanced bipartite graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchingResult {
    /// `sqrt(|Per(A)|)`.
    pub matchings: f64,
    /// `Per(A)` or its estimate.
    pub permanent: f64,
    /// Confidence interval on the matching count (sampled backend).
    pub matchings_interval: Option<(f64, f64)>,
    /// Vertex order used to bring `A` to `[[0, C], [C^T, 0]]`.
    pub vertex_order: Vec<usize>,
    pub backend: Backend,
    pub estimation: Option<EstimationResult>,
}

/// Counts perfect matchings of a balanced bipartite graph as `sqrt(Per(A))`.
///
/// The vertices are reordered so one side comes first; then
/// `Per(A) = Per(C)^2` and `Per(C)` is the matching count.
pub fn perfect_matchings(g: &Graph, backend: Backend) -> Result<MatchingResult> {
    let sides = match g.bipartition() {
        Some(s) => s.to_vec(),
        None => g
            .two_coloring()
            .ok_or_else(|| Error::NotBipartite("graph contains an odd cycle".into()))?,
    };
    let left: Vec<usize> = (0..g.n()).filter(|&v| !sides[v]).collect();
    let right: Vec<usize> = (0..g.n()).filter(|&v| sides[v]).collect();
    if left.len() != right.len() {
        return Err(Error::NotBipartite(format!(
            "parts have {} and {} vertices",
            left.len(),
            right.len()
        )));
    }
    let order: Vec<usize> = left.into_iter().chain(right).collect();
    let reordered = g.adjacency().permute_symmetric(&order);
    let (permanent, estimation) = match backend {
        Backend::Exact => {
            let rows: Vec<Vec<i64>> = (0..g.n())
                .map(|i| (0..g.n()).map(|j| reordered[(i, j)].re as i64).collect())
                .collect();
            (permanent_integer(&rows)? as f64, None)
        }
        sampled => sampled.permanent_value(&reordered, 0)?,
    };
    Ok(MatchingResult {
        matchings: permanent.abs().sqrt(),
        permanent,
        matchings_interval: estimation
            .as_ref()
            .map(|e| (e.confidence_interval.0.sqrt(), e.confidence_interval.1.sqrt())),
        vertex_order: order,
        backend,
        estimation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::focksim::StoppingRule;
    use crate::graphlib::count_perfect_matchings_bruteforce;

    #[test]
    fn exact_counts() {
        assert_eq!(perfect_matchings(&Graph::complete_bipartite(3, 3), Backend::Exact).unwrap().matchings, 6.0);
        assert_eq!(perfect_matchings(&Graph::cycle(4), Backend::Exact).unwrap().matchings, 2.0);
        let c6 = Graph::cycle(6);
        assert_eq!(
            perfect_matchings(&c6, Backend::Exact).unwrap().matchings,
            count_perfect_matchings_bruteforce(&c6).unwrap() as f64
        );
    }

    #[test]
    fn rejects_non_bipartite_and_unbalanced() {
        assert!(matches!(
            perfect_matchings(&Graph::complete(3), Backend::Exact),
            Err(Error::NotBipartite(_))
        ));
        assert!(matches!(
            perfect_matchings(&Graph::complete_bipartite(1, 2), Backend::Exact),
            Err(Error::NotBipartite(_))
        ));
    }

    #[test]
    fn sampled_k22() {
        let r = perfect_matchings(
            &Graph::complete_bipartite(2, 2),
            Backend::sampled(StoppingRule::fixed(100_000), 17),
        )
        .unwrap();
        assert!((r.matchings - 2.0).abs() <= 0.1, "{}", r.matchings);
        assert!(r.estimation.is_some());
    }
}
