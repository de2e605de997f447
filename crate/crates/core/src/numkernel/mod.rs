//! Dense complex linear algebra and exact permanent kernels.
//!
//! Everything here is a pure function of its inputs.

mod linalg;
mod matrix;
mod permanent;
pub mod random;
mod vandermonde;

pub use linalg::{
    hermitian_eigen, psd_sqrt, spectral_norm, svd, HermitianEigen, SvdResult, HERMITIAN_TOL, PSD_CLAMP,
};
pub use matrix::ComplexMatrix;
pub use permanent::{
    permanent_exact, permanent_integer, permanent_naive, permanent_real, NAIVE_MAX_N, RYSER_MAX_N,
};
pub use vandermonde::{eval_poly, solve_vandermonde, VandermondeSolution, MAX_CONDITION};
