//! Post-selection estimator for `|Per(A)|` with Hoeffding confidence bands.

use serde::{Deserialize, Serialize};

use super::{full_distribution, BatchConfig, Sampler, StoppingRule};
use crate::encoder::{encode, EncodedCircuit};
use crate::error::{Error, Result};
use crate::numkernel::ComplexMatrix;

/// Largest matrix order accepted by the exact-enumeration backend.
pub const ESTIMATOR_MAX_N: usize = 7;

pub const DEFAULT_CONFIDENCE: f64 = 0.95;

/// Result of one post-selection estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimationResult {
    pub total_samples: u64,
    pub postselected_count: u64,
    pub abs_permanent_estimate: f64,
    pub confidence_interval: (f64, f64),
    pub confidence: f64,
    pub seed: u64,
    pub scale: f64,
    pub photon_count: usize,
    pub stopping_rule: StoppingRule,
}

impl EstimationResult {
    /// Empirical post-selection frequency `n_post / N`.
    pub fn postselection_rate(&self) -> f64 {
        self.postselected_count as f64 / self.total_samples as f64
    }

    pub fn contains(&self, value: f64) -> bool {
        self.confidence_interval.0 <= value && value <= self.confidence_interval.1
    }
}

/// Hoeffding half-width `sqrt(ln(2/(1-c)) / (2N))`.
pub fn hoeffding_half_width(samples: u64, confidence: f64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::Domain("sample count must be positive".into()));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::Domain(format!("confidence {confidence} outside (0, 1)")));
    }
    Ok(((2.0 / (1.0 - confidence)).ln() / (2.0 * samples as f64)).sqrt())
}

/// Two-sided Hoeffding interval on a Bernoulli mean, clipped to `[0, 1]`.
pub fn hoeffding_interval(p_hat: f64, samples: u64, confidence: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&p_hat) {
        return Err(Error::Domain(format!("frequency {p_hat} outside [0, 1]")));
    }
    let eps = hoeffding_half_width(samples, confidence)?;
    Ok(((p_hat - eps).max(0.0), (p_hat + eps).min(1.0)))
}

/// Maps a probability to a permanent magnitude: `p -> scale^n sqrt(p)`.
pub fn probability_to_permanent(p: f64, scale: f64, photons: usize) -> f64 {
    scale.powi(photons as i32) * p.max(0.0).sqrt()
}

/// Exact post-selection probability on the standard pattern of `circuit`.
pub fn postselection_probability(circuit: &EncodedCircuit) -> Result<f64> {
    let input = circuit.standard_pattern();
    super::outcome_probability(circuit, &input, &input)
}

/// `|Per(A)|` read back from the exact circuit probability.
pub fn exact_abs_permanent_via_circuit(a: &ComplexMatrix) -> Result<f64> {
    let circuit = encode(a)?;
    let p = postselection_probability(&circuit)?;
    Ok(probability_to_permanent(p, circuit.scale, circuit.photon_count))
}

/// Samples `circuit` from its standard input and post-selects on the same
/// pattern.
pub fn estimate_from_circuit(
    circuit: &EncodedCircuit,
    rule: StoppingRule,
    seed: u64,
    config: BatchConfig,
) -> Result<EstimationResult> {
    let input = circuit.standard_pattern();
    let dist = full_distribution(circuit, &input)?;
    let target = dist
        .index_of(&input)
        .ok_or_else(|| Error::Domain("standard pattern missing from distribution".into()))?;
    let run = Sampler::new(&dist, config)?.postselect(target, rule, seed)?;
    let n = circuit.photon_count;
    let p_hat = run.hits as f64 / run.shots as f64;
    let (lo, hi) = hoeffding_interval(p_hat, run.shots, DEFAULT_CONFIDENCE)?;
    Ok(EstimationResult {
        total_samples: run.shots,
        postselected_count: run.hits,
        abs_permanent_estimate: probability_to_permanent(p_hat, circuit.scale, n),
        confidence_interval: (
            probability_to_permanent(lo, circuit.scale, n),
            probability_to_permanent(hi, circuit.scale, n),
        ),
        confidence: DEFAULT_CONFIDENCE,
        seed,
        scale: circuit.scale,
        photon_count: n,
        stopping_rule: rule,
    })
}

/// Encodes `a` and estimates `|Per(a)|` by sampling.
pub fn estimate_abs_permanent(a: &ComplexMatrix, rule: StoppingRule, seed: u64) -> Result<EstimationResult> {
    estimate_abs_permanent_with(a, rule, seed, BatchConfig::default())
}

pub fn estimate_abs_permanent_with(
    a: &ComplexMatrix,
    rule: StoppingRule,
    seed: u64,
    config: BatchConfig,
) -> Result<EstimationResult> {
    let n = a.order()?;
    if n > ESTIMATOR_MAX_N {
        return Err(Error::SizeLimit {
            what: "sampled permanent estimate",
            n,
            limit: ESTIMATOR_MAX_N,
        });
    }
    estimate_from_circuit(&encode(a)?, rule, seed, config)
}
