//! Graph applications built on the encoder and the Fock simulator.
//!
//! Every pipeline takes a [`Backend`]: `Exact` evaluates permanents (or
//! circuit probabilities) directly, `Sampled` estimates them from seeded
//! post-selected samples of the encoded circuit.

mod boost;
mod dense;
mod isomorphism;
mod matchings;
mod polynomial;

pub use boost::{
    boost_epsilon, boost_row_scan, boost_row_scan_sampled, principal_minor_sums, recover_permanent_from_epsilon,
    EpsilonPoint, EpsilonRecovery, EpsilonScan, RowBoostPoint, RowBoostSample, RowBoostScan, RowStatistics,
    CONDI2_FRACTION,
};
pub use dense::{dense_subgraph_complete, SubgraphRanking, MAX_BLOCK_MODES};
pub use isomorphism::{gi_exhaustive_check, GI_EXHAUSTIVE_MAX_N};
pub use matchings::{perfect_matchings, MatchingResult};
pub use polynomial::{
    permanental_polynomial, poly_distinguish, random_points, DistinguishResult, MatrixFamily, PolynomialResult,
    Verdict, POINT_RANGE,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::focksim::{estimate_abs_permanent_with, BatchConfig, EstimationResult, StoppingRule};
use crate::numkernel::{permanent_exact, ComplexMatrix};

/// Sampling parameters for the `Sampled` backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledConfig {
    pub rule: StoppingRule,
    pub seed: u64,
    #[serde(default)]
    pub batch: BatchConfig,
}

/// How a pipeline obtains permanent values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "snake_case")]
pub enum Backend {
    Exact,
    Sampled(SampledConfig),
}

impl Backend {
    pub fn sampled(rule: StoppingRule, seed: u64) -> Self {
        Self::Sampled(SampledConfig {
            rule,
            seed,
            batch: BatchConfig::default(),
        })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact)
    }

    /// `Per(a)` (exact, signed real part) or a sampled `|Per(a)|` estimate.
    /// `index` selects an independent seed stream for sub-experiment `index`.
    pub(crate) fn permanent_value(&self, a: &ComplexMatrix, index: u64) -> Result<(f64, Option<EstimationResult>)> {
        match *self {
            Self::Exact => Ok((permanent_exact(a)?.re, None)),
            Self::Sampled(cfg) => {
                let est = estimate_abs_permanent_with(a, cfg.rule, derive_seed(cfg.seed, index), cfg.batch)?;
                Ok((est.abs_permanent_estimate, Some(est)))
            }
        }
    }
}

/// Seed for sub-experiment `index` of a run seeded with `seed` (SplitMix64
/// finalizer over the pair).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Index of the last down-crossing of `1.0` in `ys`, linearly interpolated in
/// `xs`: the last `i` with `ys[i] > 1 >= ys[i + 1]`.
pub(crate) fn last_down_crossing(xs: &[f64], ys: &[f64]) -> Option<f64> {
    (0..xs.len().saturating_sub(1))
        .rev()
        .find(|&i| ys[i] > 1.0 && ys[i + 1] <= 1.0)
        .map(|i| interpolate_one(xs[i], ys[i], xs[i + 1], ys[i + 1]))
}

/// First up-crossing of `1.0`: the first `i` with `ys[i] <= 1 < ys[i + 1]`.
pub(crate) fn first_up_crossing(xs: &[f64], ys: &[f64]) -> Option<f64> {
    (0..xs.len().saturating_sub(1))
        .find(|&i| ys[i] <= 1.0 && ys[i + 1] > 1.0)
        .map(|i| interpolate_one(xs[i], ys[i], xs[i + 1], ys[i + 1]))
}

fn interpolate_one(x0: f64, y0: f64, x1: f64, y1: f64) -> f64 {
    if y1 == y0 {
        x0
    } else {
        x0 + (1.0 - y0) / (y1 - y0) * (x1 - x0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_differ() {
        let s: std::collections::BTreeSet<u64> = (0..1000).map(|i| derive_seed(42, i)).collect();
        assert_eq!(s.len(), 1000);
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
    }

    #[test]
    fn crossings() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [1.0, 3.0, 2.0, 0.0];
        assert!((last_down_crossing(&xs, &ys).unwrap() - 3.5).abs() < 1e-12);
        assert!((first_up_crossing(&xs, &ys).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(last_down_crossing(&xs, &[1.0, 0.5, 0.2, 0.1]), None);
    }

    #[test]
    fn backend_json() {
        let b = Backend::sampled(StoppingRule::fixed(10), 3);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<Backend>(&s).unwrap(), b);
        assert_eq!(serde_json::to_string(&Backend::Exact).unwrap(), r#"{"backend":"exact"}"#);
    }
}
