//! Jacobi-based eigen and singular value decompositions.
//!
//! Both routines diagonalize 2x2 Hermitian pivots with the same complex
//! rotation: a phase on column `q` makes the pivot real, then a real Jacobi
//! rotation zeroes it.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Tolerance used when checking a matrix is Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as zero by [`psd_sqrt`].
pub const PSD_CLAMP: f64 = 1e-10;

/// `W * diag(singular_values) * V^H`, singular values sorted descending.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub w: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl SvdResult {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.singular_values.len();
        let ws = ComplexMatrix::from_fn(n, n, |i, j| self.w[(i, j)] * self.singular_values[j]);
        ws.matmul(&self.v.adjoint()).expect("square factors")
    }
}

/// Eigenvalues (ascending) and the unitary whose columns are eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// 2x2 unitary `Q` (as `[q00, q01, q10, q11]`) with `Q^H [[a, z], [z*, b]] Q` diagonal.
fn jacobi_rotation(a: f64, b: f64, z: Complex64) -> [Complex64; 4] {
    let r = z.norm();
    let phase = if r > 0.0 { z / r } else { Complex64::new(1.0, 0.0) };
    let tau = (b - a) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let pc = phase.conj();
    [
        Complex64::new(c, 0.0),
        Complex64::new(s, 0.0),
        -pc * s,
        pc * c,
    ]
}

/// Relative off-diagonal size treated as zero; rounding in the inner
/// products is of order `n * eps`.
fn jacobi_tol(n: usize) -> f64 {
    (4.0 * n as f64 * f64::EPSILON).max(1e-15)
}

fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, rot: &[Complex64; 4]) {
    for k in 0..m.rows() {
        let mp = m[(k, p)];
        let mq = m[(k, q)];
        m[(k, p)] = mp * rot[0] + mq * rot[2];
        m[(k, q)] = mp * rot[1] + mq * rot[3];
    }
}

fn rotate_rows_adjoint(m: &mut ComplexMatrix, p: usize, q: usize, rot: &[Complex64; 4]) {
    for k in 0..m.cols() {
        let mp = m[(p, k)];
        let mq = m[(q, k)];
        m[(p, k)] = rot[0].conj() * mp + rot[2].conj() * mq;
        m[(q, k)] = rot[1].conj() * mp + rot[3].conj() * mq;
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<usize> {
    let n = m.order()?;
    let dev = m.hermiticity_error();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(n)
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = check_hermitian(m)?;
    // symmetrize so rounding in the input cannot drift the pivots
    let mut h = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = h.frobenius_sq().sqrt();
    let mut converged = n <= 1 || scale == 0.0;
    let mut sweep = 0;
    while !converged && sweep < MAX_SWEEPS {
        sweep += 1;
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| h[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= jacobi_tol(n) * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let z = h[(p, q)];
                if z.norm() <= 1e-300 {
                    continue;
                }
                let rot = jacobi_rotation(h[(p, p)].re, h[(q, q)].re, z);
                rotate_columns(&mut h, p, q, &rot);
                rotate_rows_adjoint(&mut h, p, q, &rot);
                h[(p, q)] = Complex64::new(0.0, 0.0);
                h[(q, p)] = Complex64::new(0.0, 0.0);
                h[(p, p)].im = 0.0;
                h[(q, q)].im = 0.0;
                rotate_columns(&mut v, p, q, &rot);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "Hermitian Jacobi eigensolver",
            sweeps: MAX_SWEEPS,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| h[(a, a)].re.total_cmp(&h[(b, b)].re));
    let values = order.iter().map(|&i| h[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// One-sided (Hestenes) Jacobi SVD of a square matrix.
pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    let n = a.order()?;
    let mut m = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let tol = jacobi_tol(n);
    // columns this small are numerically zero; rotating them only stirs noise
    let negligible = (tol * tol) * a.frobenius_sq();
    let mut converged = n <= 1;
    let mut sweep = 0;
    while !converged && sweep < MAX_SWEEPS {
        sweep += 1;
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    let mp = m[(k, p)];
                    let mq = m[(k, q)];
                    alpha += mp.norm_sqr();
                    beta += mq.norm_sqr();
                    gamma += mp.conj() * mq;
                }
                if gamma.norm() <= tol * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                let rot = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut m, p, q, &rot);
                rotate_columns(&mut v, p, q, &rot);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "one-sided Jacobi SVD",
            sweeps: MAX_SWEEPS,
        });
    }

    let norms: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|k| m[(k, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let cutoff = 1e-14 * sigma_max;

    let mut w_cols: Vec<Option<Vec<Complex64>>> = order
        .iter()
        .map(|&j| {
            let s = norms[j];
            if s > cutoff && s > 0.0 {
                Some((0..n).map(|k| m[(k, j)] / s).collect())
            } else {
                None
            }
        })
        .collect();
    complete_orthonormal(&mut w_cols, n);

    let w = ComplexMatrix::from_fn(n, n, |i, j| w_cols[j].as_ref().expect("completed")[i]);
    let v = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(SvdResult {
        w,
        singular_values,
        v,
    })
}

/// Fills the `None` slots with unit vectors orthogonal to everything else.
fn complete_orthonormal(cols: &mut [Option<Vec<Complex64>>], n: usize) {
    let mut basis = 0;
    for slot in 0..cols.len() {
        if cols[slot].is_some() {
            continue;
        }
        while basis < n {
            let mut cand = vec![Complex64::new(0.0, 0.0); n];
            cand[basis] = Complex64::new(1.0, 0.0);
            basis += 1;
            // two Gram-Schmidt passes
            for _ in 0..2 {
                for other in cols.iter().flatten() {
                    let proj: Complex64 = other.iter().zip(&cand).map(|(o, c)| o.conj() * c).sum();
                    for (c, o) in cand.iter_mut().zip(other) {
                        *c -= proj * o;
                    }
                }
            }
            let norm = cand.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-8 {
                cols[slot] = Some(cand.into_iter().map(|c| c / norm).collect());
                break;
            }
        }
    }
}

/// Largest singular value.
pub fn spectral_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(svd(a)?.sigma_max())
}

/// Unique positive semidefinite square root of a Hermitian PSD matrix.
///
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero; anything more negative
/// is an error.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m)?;
    if let Some(&worst) = eig.values.iter().find(|&&l| l < -PSD_CLAMP) {
        return Err(Error::NotPsd(worst));
    }
    let n = eig.values.len();
    let roots: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let vr = ComplexMatrix::from_fn(n, n, |i, j| eig.vectors[(i, j)] * roots[j]);
    vr.matmul(&eig.vectors.adjoint())
}
