//! Seeded inverse-CDF sampling from an exact output distribution.
//!
//! Shots are grouped into fixed-size batches. Batch `b` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` switched to stream `b`, so each batch is a
//! pure function of `(seed, b, batch_size)` and batches can run on any number
//! of workers. Merged results are counts, which do not depend on order.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{full_distribution, OutcomePattern, OutputDistribution};
use crate::encoder::EncodedCircuit;
use crate::error::{Error, Result};

/// Hard ceiling on shots for the draw-until-M rule.
pub const DEFAULT_MAX_SHOTS: u64 = 100_000_000;

/// Batching parameters; together with the seed they fix every draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchConfig {
    /// Shots per RNG stream.
    pub batch_size: u64,
    /// Batches evaluated concurrently before checking a stopping rule.
    pub wave: usize,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            batch_size: 1 << 16,
            wave: 64,
        }
    }
}

/// When to stop drawing shots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum StoppingRule {
    /// Exactly `shots` draws.
    FixedShots { shots: u64 },
    /// Draw until `target` post-selected events, or `max_shots` draws.
    PostSelected { target: u64, max_shots: u64 },
}

impl StoppingRule {
    pub fn fixed(shots: u64) -> Self {
        Self::FixedShots { shots }
    }

    pub fn postselected(target: u64) -> Self {
        Self::PostSelected {
            target,
            max_shots: DEFAULT_MAX_SHOTS,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Self::FixedShots { shots: 0 } => Err(Error::Domain("shot count must be positive".into())),
            Self::PostSelected { target: 0, .. } | Self::PostSelected { max_shots: 0, .. } => {
                Err(Error::Domain("post-selection target and shot cap must be positive".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Multiset of sampled outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    pub total: u64,
    pub counts: BTreeMap<OutcomePattern, u64>,
}

impl SampleSet {
    pub fn count_of(&self, pattern: &OutcomePattern) -> u64 {
        self.counts.get(pattern).copied().unwrap_or(0)
    }
}

/// Outcome of a draw-with-post-selection run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PostSelectionRun {
    pub shots: u64,
    pub hits: u64,
}

/// Inverse-CDF sampler over a fixed distribution.
#[derive(Debug, Clone)]
pub struct Sampler {
    cdf: Vec<f64>,
    config: BatchConfig,
}

impl Sampler {
    pub fn new(distribution: &OutputDistribution, config: BatchConfig) -> Result<Self> {
        Self::from_probabilities(distribution.probabilities(), config)
    }

    pub fn from_probabilities(probabilities: &[f64], config: BatchConfig) -> Result<Self> {
        if config.batch_size == 0 || config.wave == 0 {
            return Err(Error::Domain("batch size and wave must be positive".into()));
        }
        if probabilities.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Domain("probabilities must be finite and non-negative".into()));
        }
        let total: f64 = probabilities.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(Error::Domain("distribution has zero total mass".into()));
        }
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc / total
            })
            .collect();
        // trailing zero-probability outcomes must stay unreachable
        let last_live = probabilities.iter().rposition(|&p| p > 0.0).unwrap_or(0);
        for c in &mut cdf[last_live..] {
            *c = 1.0;
        }
        Ok(Self { cdf, config })
    }

    pub fn config(&self) -> BatchConfig {
        self.config
    }

    fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(batch);
        rng
    }

    #[inline]
    fn draw(&self, rng: &mut ChaCha8Rng) -> usize {
        let u: f64 = rng.random();
        self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1)
    }

    /// Visits up to `len` draws of batch `batch`; stops early when `visit`
    /// returns `false`. Returns the number of draws made.
    pub fn run_batch(&self, seed: u64, batch: u64, len: u64, mut visit: impl FnMut(usize) -> bool) -> u64 {
        let mut rng = Self::batch_rng(seed, batch);
        for i in 0..len {
            if !visit(self.draw(&mut rng)) {
                return i + 1;
            }
        }
        len
    }

    fn batch_len(&self, batch: u64, total: u64) -> u64 {
        let start = batch * self.config.batch_size;
        self.config.batch_size.min(total.saturating_sub(start))
    }

    /// Per-outcome counts of exactly `shots` draws.
    pub fn counts(&self, shots: u64, seed: u64) -> Vec<u64> {
        let batches = shots.div_ceil(self.config.batch_size);
        (0..batches)
            .into_par_iter()
            .map(|b| {
                let mut local = vec![0u64; self.cdf.len()];
                self.run_batch(seed, b, self.batch_len(b, shots), |i| {
                    local[i] += 1;
                    true
                });
                local
            })
            .reduce(
                || vec![0u64; self.cdf.len()],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }

    /// Counts draws landing on `target` under a stopping rule.
    ///
    /// For the post-selected rule the run ends on the draw that produces the
    /// `target`-th hit, so `shots` is the exact number of draws consumed.
    pub fn postselect(&self, target: usize, rule: StoppingRule, seed: u64) -> Result<PostSelectionRun> {
        Ok(self.postselect_any(&[target], rule, seed)?.0)
    }

    /// As [`Sampler::postselect`], where a hit is a draw landing on any of
    /// `targets`; also returns the hits per target.
    pub fn postselect_any(
        &self,
        targets: &[usize],
        rule: StoppingRule,
        seed: u64,
    ) -> Result<(PostSelectionRun, Vec<u64>)> {
        rule.validate()?;
        let mut slot = std::collections::HashMap::with_capacity(targets.len());
        for (k, &t) in targets.iter().enumerate() {
            if t >= self.cdf.len() {
                return Err(Error::Domain(format!("outcome index {t} out of range")));
            }
            if slot.insert(t, k).is_some() {
                return Err(Error::Domain(format!("outcome index {t} listed twice")));
            }
        }
        let (cap, wanted) = match rule {
            StoppingRule::FixedShots { shots } => (shots, u64::MAX),
            StoppingRule::PostSelected { target, max_shots } => (max_shots, target),
        };
        let batches = cap.div_ceil(self.config.batch_size);
        let mut shots = 0u64;
        let mut per_target = vec![0u64; targets.len()];
        let mut hits = 0u64;
        let mut next = 0u64;
        while next < batches {
            let end = (next + self.config.wave as u64).min(batches);
            let wave: Vec<Vec<u64>> = (next..end)
                .into_par_iter()
                .map(|b| {
                    let mut local = vec![0u64; targets.len()];
                    self.run_batch(seed, b, self.batch_len(b, cap), |i| {
                        if let Some(&k) = slot.get(&i) {
                            local[k] += 1;
                        }
                        true
                    });
                    local
                })
                .collect();
            for (offset, local) in wave.into_iter().enumerate() {
                let b = next + offset as u64;
                let len = self.batch_len(b, cap);
                let h: u64 = local.iter().sum();
                if hits + h >= wanted {
                    let need = wanted - hits;
                    let mut seen = 0u64;
                    let used = self.run_batch(seed, b, len, |i| {
                        if let Some(&k) = slot.get(&i) {
                            per_target[k] += 1;
                            seen += 1;
                        }
                        seen < need
                    });
                    let run = PostSelectionRun {
                        shots: shots + used,
                        hits: wanted,
                    };
                    return Ok((run, per_target));
                }
                for (acc, c) in per_target.iter_mut().zip(local) {
                    *acc += c;
                }
                hits += h;
                shots += len;
            }
            next = end;
        }
        Ok((PostSelectionRun { shots, hits }, per_target))
    }
}

/// Draws `shots` outcomes of `input` through `circuit`.
pub fn sample(circuit: &EncodedCircuit, input: &OutcomePattern, shots: u64, seed: u64) -> Result<SampleSet> {
    sample_with(circuit, input, shots, seed, BatchConfig::default())
}

pub fn sample_with(
    circuit: &EncodedCircuit,
    input: &OutcomePattern,
    shots: u64,
    seed: u64,
    config: BatchConfig,
) -> Result<SampleSet> {
    if shots == 0 {
        return Err(Error::Domain("shot count must be positive".into()));
    }
    let dist = full_distribution(circuit, input)?;
    let sampler = Sampler::new(&dist, config)?;
    let counts = sampler
        .counts(shots, seed)
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(i, c)| (dist.pattern(i), c))
        .collect();
    Ok(SampleSet { total: shots, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::ComplexMatrix;

    fn beamsplitter() -> EncodedCircuit {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        EncodedCircuit::from_unitary(ComplexMatrix::from_real_rows(&[[h, h], [h, -h]]).unwrap(), 2).unwrap()
    }

    #[test]
    fn deterministic_distribution() {
        let c = EncodedCircuit::from_unitary(ComplexMatrix::identity(2), 1).unwrap();
        let s = sample(&c, &OutcomePattern::new(vec![1, 0]), 1000, 1).unwrap();
        assert_eq!(s.count_of(&OutcomePattern::new(vec![1, 0])), 1000);
        assert_eq!(s.counts.len(), 1);
    }

    #[test]
    fn hong_ou_mandel_frequencies() {
        let s = sample(&beamsplitter(), &OutcomePattern::new(vec![1, 1]), 100_000, 42).unwrap();
        let f = s.count_of(&OutcomePattern::new(vec![2, 0])) as f64 / 1e5;
        assert!((f - 0.5).abs() < 0.01, "{f}");
        assert_eq!(s.count_of(&OutcomePattern::new(vec![1, 1])), 0);
    }

    #[test]
    fn same_seed_same_samples() {
        let inp = OutcomePattern::new(vec![1, 1]);
        let a = sample(&beamsplitter(), &inp, 50_000, 9).unwrap();
        let b = sample(&beamsplitter(), &inp, 50_000, 9).unwrap();
        assert_eq!(a, b);
        let c = sample(&beamsplitter(), &inp, 50_000, 10).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_shots_rejected() {
        assert!(sample(&beamsplitter(), &OutcomePattern::new(vec![1, 1]), 0, 1).is_err());
    }

    #[test]
    fn independent_of_thread_count() {
        let sampler = Sampler::from_probabilities(&[0.2, 0.3, 0.5], BatchConfig { batch_size: 1000, wave: 4 }).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    (
                        sampler.counts(25_500, 3),
                        sampler.postselect(1, StoppingRule::PostSelected { target: 777, max_shots: 1 << 30 }, 3).unwrap(),
                    )
                })
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn postselected_rule_stops_on_target() {
        let sampler = Sampler::from_probabilities(&[0.9, 0.1], BatchConfig { batch_size: 100, wave: 3 }).unwrap();
        let run = sampler.postselect(1, StoppingRule::PostSelected { target: 50, max_shots: 1_000_000 }, 5).unwrap();
        assert_eq!(run.hits, 50);
        // the last draw is a hit: replaying exactly `shots` draws yields 50 hits
        let fixed = sampler.postselect(1, StoppingRule::fixed(run.shots), 5).unwrap();
        assert_eq!(fixed.hits, 50);
        let fewer = sampler.postselect(1, StoppingRule::fixed(run.shots - 1), 5).unwrap();
        assert_eq!(fewer.hits, 49);
    }

    #[test]
    fn several_targets() {
        let sampler = Sampler::from_probabilities(&[0.5, 0.25, 0.25], BatchConfig { batch_size: 64, wave: 2 }).unwrap();
        let (run, per) = sampler
            .postselect_any(&[1, 2], StoppingRule::PostSelected { target: 300, max_shots: 1 << 20 }, 4)
            .unwrap();
        assert_eq!(per.iter().sum::<u64>(), 300);
        assert_eq!(run.hits, 300);
        let counts = sampler.counts(run.shots, 4);
        assert_eq!(counts[1..], per[..]);
        assert!(sampler.postselect_any(&[1, 1], StoppingRule::fixed(5), 0).is_err());
    }

    #[test]
    fn cap_limits_shots() {
        let sampler = Sampler::from_probabilities(&[1.0, 0.0], BatchConfig::default()).unwrap();
        let run = sampler.postselect(1, StoppingRule::PostSelected { target: 1, max_shots: 12_345 }, 0).unwrap();
        assert_eq!(run, PostSelectionRun { shots: 12_345, hits: 0 });
    }
}
