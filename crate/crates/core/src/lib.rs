//! Classical simulation of linear-optical permanent estimation.
//!
//! A bounded complex matrix `A` is rescaled by its largest singular value and
//! embedded as the top-left block of a `2n x 2n` unitary (unitary dilation).
//! Sending one photon into each of the first `n` modes and post-selecting on
//! one photon in each of the first `n` output modes happens with probability
//! `|Per(A)|^2 / sigma_max(A)^(2n)`, so sampling that circuit estimates
//! `|Per(A)|`.
//!
//! The crate is organized bottom-up:
//!
//! - [`numkernel`]: dense complex matrices, SVD, PSD square roots, permanents.
//! - [`encoder`]: rescaling, dilation, block matrices for subgraph sampling,
//!   and rectangular beamsplitter-mesh synthesis.
//! - [`focksim`]: Fock-space output distributions, seeded sampling, and the
//!   permanent estimator with Hoeffding bands.
//! - [`graphlib`]: graphs, generators and classical oracles.
//! - [`apps`]: perfect matchings, permanental polynomials, graph isomorphism
//!   distinguishers, densest-subgraph completion and probability boosting.
//! - [`harness`]: the command line, file formats and the experiment journal.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod apps;
pub mod encoder;
pub mod error;
pub mod focksim;
pub mod graphlib;
pub mod harness;
pub mod numkernel;

pub use error::{Error, Result};
pub use numkernel::ComplexMatrix;
