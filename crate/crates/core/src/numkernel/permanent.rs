//! Matrix permanents.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest order accepted by [`permanent_exact`].
pub const RYSER_MAX_N: usize = 30;
/// Largest order accepted by [`permanent_naive`].
pub const NAIVE_MAX_N: usize = 8;

/// Ryser's inclusion-exclusion formula walked in Gray-code order, so each of
/// the `2^n - 1` column subsets costs one column update of the row sums plus
/// an `n`-term product.
pub fn permanent_exact(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.order()?;
    if n > RYSER_MAX_N {
        return Err(Error::SizeLimit {
            what: "Ryser permanent",
            n,
            limit: RYSER_MAX_N,
        });
    }
    Ok(ryser(a, n))
}

fn ryser(a: &ComplexMatrix, n: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    let mut subset_odd = false;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        if gray & (1 << j) != 0 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += a[(i, j)];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= a[(i, j)];
            }
        }
        subset_odd = !subset_odd;
        let prod: Complex64 = row_sums.iter().product();
        if subset_odd {
            total -= prod;
        } else {
            total += prod;
        }
    }
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}

/// Direct sum over all `n!` permutations. Test oracle only.
pub fn permanent_naive(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.order()?;
    if n > NAIVE_MAX_N {
        return Err(Error::SizeLimit {
            what: "naive permanent",
            n,
            limit: NAIVE_MAX_N,
        });
    }
    fn go(a: &ComplexMatrix, row: usize, used: u32, acc: Complex64, n: usize) -> Complex64 {
        if row == n {
            return acc;
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for col in 0..n {
            if used & (1 << col) == 0 {
                let x = a[(row, col)];
                if x.re != 0.0 || x.im != 0.0 {
                    sum += go(a, row + 1, used | (1 << col), acc * x, n);
                }
            }
        }
        sum
    }
    Ok(go(a, 0, 0, Complex64::new(1.0, 0.0), n))
}

/// Permanent of a real matrix, returning the real part of the Ryser value.
pub fn permanent_real(a: &ComplexMatrix) -> Result<f64> {
    Ok(permanent_exact(a)?.re)
}

/// Integer Ryser for 0/1 and small-integer matrices, exact in `i128`.
pub fn permanent_integer(rows: &[Vec<i64>]) -> Result<i128> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: rows.first().map_or(0, Vec::len),
        });
    }
    if n > RYSER_MAX_N {
        return Err(Error::SizeLimit {
            what: "Ryser permanent",
            n,
            limit: RYSER_MAX_N,
        });
    }
    if n == 0 {
        return Ok(1);
    }
    let mut row_sums = vec![0i128; n];
    let mut total: i128 = 0;
    let mut gray: u64 = 0;
    let mut subset_odd = false;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let sign = if gray & (1 << j) != 0 { 1 } else { -1 };
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s += sign * rows[i][j] as i128;
        }
        subset_odd = !subset_odd;
        let prod: i128 = row_sums.iter().product();
        if subset_odd {
            total -= prod;
        } else {
            total += prod;
        }
    }
    Ok(if n % 2 == 1 { -total } else { total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::random::{random_complex_matrix, random_integer_matrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn complete(n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(if i == j { 0.0 } else { 1.0 }, 0.0))
    }

    #[test]
    fn complete_graph_golden_values() {
        assert_eq!(permanent_exact(&complete(3)).unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(permanent_exact(&complete(4)).unwrap(), Complex64::new(9.0, 0.0));
        assert_eq!(permanent_exact(&complete(6)).unwrap(), Complex64::new(265.0, 0.0));
        assert_eq!(permanent_naive(&complete(4)).unwrap(), Complex64::new(9.0, 0.0));
    }

    #[test]
    fn identity_and_ones() {
        for n in 0..6 {
            assert_eq!(permanent_exact(&ComplexMatrix::identity(n)).unwrap().re, 1.0);
        }
        let ones = ComplexMatrix::from_fn(3, 3, |_, _| Complex64::new(1.0, 0.0));
        assert_eq!(permanent_naive(&ones).unwrap().re, 6.0);
    }

    #[test]
    fn ryser_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=8 {
            let a = random_complex_matrix(n, &mut rng);
            let r = permanent_exact(&a).unwrap();
            let o = permanent_naive(&a).unwrap();
            assert!((r - o).norm() <= 1e-9 * o.norm().max(1.0), "n={n}");
        }
        let a = random_integer_matrix(5, -3, 3, &mut rng);
        let r = permanent_exact(&a).unwrap();
        assert_eq!(r, permanent_naive(&a).unwrap());
        let ints: Vec<Vec<i64>> = (0..5).map(|i| (0..5).map(|j| a[(i, j)].re as i64).collect()).collect();
        assert_eq!(permanent_integer(&ints).unwrap() as f64, r.re);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            permanent_naive(&ComplexMatrix::identity(9)),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(
            permanent_exact(&ComplexMatrix::identity(31)),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(permanent_exact(&ComplexMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }
}
