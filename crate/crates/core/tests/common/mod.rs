//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the crate's numerics: permanents are expanded
//! over all permutations, singular values come from power iteration, and
//! polynomial coefficients from principal-minor sums.

#![allow(dead_code)]

use num_complex::Complex64;
use photonperm::numkernel::ComplexMatrix;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Permanent by summing over every permutation.
pub fn oracle_permanent(a: &ComplexMatrix) -> Complex64 {
    let n = a.rows();
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    permutations(n)
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &j)| a[(i, j)]).product::<Complex64>())
        .sum()
}

/// Permanent of a 0/1 (or integer) matrix given as rows.
pub fn oracle_permanent_int(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    permutations(n)
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &j)| rows[i][j] as i128).product::<i128>())
        .sum()
}

/// Largest singular value by power iteration on `A^dagger A`.
pub fn oracle_sigma_max(a: &ComplexMatrix) -> f64 {
    let n = a.cols();
    let m = a.rows();
    let mut v: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + 0.1 * i as f64, 0.3 - 0.05 * i as f64)).collect();
    let mut lambda = 0.0;
    for _ in 0..20_000 {
        let av: Vec<Complex64> = (0..m).map(|i| (0..n).map(|j| a[(i, j)] * v[j]).sum()).collect();
        let w: Vec<Complex64> = (0..n).map(|j| (0..m).map(|i| a[(i, j)].conj() * av[i]).sum()).collect();
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        v = w.iter().map(|z| z / norm).collect();
        if (norm - lambda).abs() <= 1e-15 * norm {
            lambda = norm;
            break;
        }
        lambda = norm;
    }
    lambda.sqrt()
}

/// All subsets of `0..n` as sorted index lists.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Coefficients `c_0..c_n` of `Per(xI - M)` for a real matrix `M`:
/// `c_{n-|S|} = (-1)^|S| Per(M[S, S])` summed over subsets `S`.
pub fn oracle_perm_poly(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    let mut c = vec![0.0; n + 1];
    for s in subsets(n) {
        let sign = if s.len() % 2 == 0 { 1.0 } else { -1.0 };
        c[n - s.len()] += sign * oracle_permanent(&m.select(&s, &s)).re;
    }
    c
}

/// Signed `Per(xI - M)` by direct expansion.
pub fn oracle_shifted_permanent(m: &ComplexMatrix, x: f64) -> f64 {
    let n = m.rows();
    let b = ComplexMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(x, 0.0) - m[(i, j)] } else { -m[(i, j)] });
    oracle_permanent(&b).re
}

pub fn relative_error(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}
