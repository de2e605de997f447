//! Random matrix generators for tests, examples and benchmarks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::ComplexMatrix;

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_complex_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-distributed unitary from Gram-Schmidt on a complex Gaussian matrix
/// (the implied `R` factor has a positive diagonal).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let z = random_complex_matrix(n, rng);
    let mut q = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|i| z[(i, j)]).collect();
        for _ in 0..2 {
            for k in 0..j {
                let proj: Complex64 = (0..n).map(|i| q[(i, k)].conj() * v[i]).sum();
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi -= proj * q[(i, k)];
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for (i, vi) in v.iter().enumerate() {
            q[(i, j)] = vi / norm;
        }
    }
    q
}

/// Matrix with integer entries drawn uniformly from `lo..=hi`.
pub fn random_integer_matrix<R: Rng + ?Sized>(n: usize, lo: i64, hi: i64, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(lo..=hi) as f64, 0.0))
}

/// Matrix with entries uniform in `[0, 1)`.
pub fn random_nonnegative_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random::<f64>(), 0.0))
}
