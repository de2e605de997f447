//! Fock-space output statistics: exact distributions, seeded sampling, and
//! the post-selection permanent estimator.

mod distribution;
mod estimator;
mod pattern;
mod sampler;

pub use distribution::{
    enumerate_outcomes, full_distribution, outcome_count, outcome_probability, submatrix, OutputDistribution,
    MAX_OUTCOMES,
};
pub use estimator::{
    estimate_abs_permanent, estimate_abs_permanent_with, estimate_from_circuit, exact_abs_permanent_via_circuit,
    hoeffding_half_width, hoeffding_interval, postselection_probability, probability_to_permanent,
    EstimationResult, DEFAULT_CONFIDENCE, ESTIMATOR_MAX_N,
};
pub use pattern::OutcomePattern;
pub use sampler::{
    sample, sample_with, BatchConfig, PostSelectionRun, SampleSet, Sampler, StoppingRule, DEFAULT_MAX_SHOTS,
};
