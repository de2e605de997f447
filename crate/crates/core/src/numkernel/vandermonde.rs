//! Polynomial coefficient recovery from point values.

use crate::error::{Error, Result};

/// Condition estimates above this are treated as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Solution of `sum_i c_i x_j^i = y_j` together with the 1-norm condition
/// number of the Vandermonde matrix.
#[derive(Debug, Clone)]
pub struct VandermondeSolution {
    pub coefficients: Vec<f64>,
    pub condition: f64,
}

#[allow(clippy::needless_range_loop)]
fn lu_solve(mut m: Vec<Vec<f64>>, mut rhs: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    for k in 0..n {
        let piv = (k..n).max_by(|&a, &b| m[a][k].abs().total_cmp(&m[b][k].abs()))?;
        if m[piv][k] == 0.0 {
            return None;
        }
        m.swap(k, piv);
        rhs.swap(k, piv);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[i][j] -= f * m[k][j];
            }
            for j in 0..rhs[i].len() {
                rhs[i][j] -= f * rhs[k][j];
            }
        }
    }
    for i in (0..n).rev() {
        for j in 0..rhs[i].len() {
            let mut s = rhs[i][j];
            for k in i + 1..n {
                s -= m[i][k] * rhs[k][j];
            }
            rhs[i][j] = s / m[i][i];
        }
    }
    Some(rhs)
}

fn norm1(m: &[Vec<f64>]) -> f64 {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| m.iter().map(|r| r[j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves the Vandermonde system by pivoted Gaussian elimination.
///
/// Fails with [`Error::IllConditioned`] when the condition estimate exceeds
/// [`MAX_CONDITION`] (or the matrix is exactly singular).
pub fn solve_vandermonde(xs: &[f64], ys: &[f64]) -> Result<VandermondeSolution> {
    let n = xs.len();
    if ys.len() != n || n == 0 {
        return Err(Error::Dimension(format!("{} points vs {} values", n, ys.len())));
    }
    let v: Vec<Vec<f64>> = xs
        .iter()
        .map(|&x| (0..n).map(|i| x.powi(i as i32)).collect())
        .collect();
    let mut rhs: Vec<Vec<f64>> = ys.iter().map(|&y| vec![y]).collect();
    for (i, r) in rhs.iter_mut().enumerate() {
        r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
    }
    let sol = lu_solve(v.clone(), rhs).ok_or(Error::IllConditioned(f64::INFINITY))?;
    let inverse: Vec<Vec<f64>> = sol.iter().map(|r| r[1..].to_vec()).collect();
    let condition = norm1(&v) * norm1(&inverse);
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::IllConditioned(condition));
    }
    Ok(VandermondeSolution {
        coefficients: sol.iter().map(|r| r[0]).collect(),
        condition,
    })
}

/// Horner evaluation of `sum_i c_i x^i`.
pub fn eval_poly(coefficients: &[f64], x: f64) -> f64 {
    coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}
