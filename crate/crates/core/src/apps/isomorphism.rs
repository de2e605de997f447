use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graphlib::invert_permutation;
use crate::numkernel::{permanent_exact, ComplexMatrix};

/// Largest order for [`gi_exhaustive_check`]; the number of checks grows
/// like the square of the number of index multisets.
pub const GI_EXHAUSTIVE_MAX_N: usize = 4;

const MATCH_TOL: f64 = 1e-9;

/// Checks `Per(A[pi(t), pi(s)]) == Per(B[t, s])` for every size `l` in
/// `1..=n` and every pair of non-decreasing index multisets `s`, `t` of size
/// `l`. Holds exactly when `B = A.permute_symmetric(pi)`.
pub fn gi_exhaustive_check(a: &ComplexMatrix, b: &ComplexMatrix, pi: &[usize]) -> Result<bool> {
    let n = a.order()?;
    if b.order()? != n {
        return Err(Error::Dimension(format!("orders {n} and {} differ", b.rows())));
    }
    if n > GI_EXHAUSTIVE_MAX_N {
        return Err(Error::SizeLimit {
            what: "exhaustive isomorphism check",
            n,
            limit: GI_EXHAUSTIVE_MAX_N,
        });
    }
    invert_permutation(pi, n)?;
    for l in 1..=n {
        let multisets: Vec<Vec<usize>> = (0..n).combinations_with_replacement(l).collect();
        for t in &multisets {
            let pt: Vec<usize> = t.iter().map(|&i| pi[i]).collect();
            for s in &multisets {
                let ps: Vec<usize> = s.iter().map(|&i| pi[i]).collect();
                let lhs = permanent_exact(&a.select(&pt, &ps))?;
                let rhs = permanent_exact(&b.select(t, s))?;
                if (lhs - rhs).norm() > MATCH_TOL * lhs.norm().max(rhs.norm()).max(1.0) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
