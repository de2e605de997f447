//! Edge-count bound on the permanent of a 0/1 adjacency matrix.
//!
//! For a graph with `n` vertices and `I` edges the degree sum is `2I`. The
//! Bregman product `prod_v (d_v!)^(1/d_v)` bounds `Per(A)` and, for a fixed
//! degree sum, is largest when the degrees are as balanced as possible:
//! `n - 2*alpha` vertices of degree `d = floor(2I/n)` and `2*alpha` of degree
//! `d + 1`, where `alpha = I - (n/2) d`. Writing the bound as `omega^2`,
//!
//! `omega(n, I) = (d!)^((n/2 - alpha)/d) * (ceil(2I/n)!)^(alpha/ceil(2I/n))`
//!
//! with a factor taken as 1 when its degree is 0.

use crate::error::{Error, Result};

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `ln (k!)^(power/k)`, zero for `k = 0`.
fn ln_root_factorial(k: usize, power: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        ln_factorial(k) * power / k as f64
    }
}

/// `omega(n, I)^2` for even `n` and even `I`.
pub fn perm_upper_bound(n: usize, edges: usize) -> Result<f64> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Domain(format!("bound needs an even vertex count >= 2, got {n}")));
    }
    if edges % 2 == 1 {
        return Err(Error::Domain(format!("bound needs an even edge count, got {edges}")));
    }
    if edges > n * (n - 1) / 2 {
        return Err(Error::Domain(format!("{edges} edges exceed the maximum for {n} vertices")));
    }
    let half = n / 2;
    let d = 2 * edges / n;
    let c = (2 * edges).div_ceil(n);
    let alpha = edges - half * d;
    let ln_omega = ln_root_factorial(d, (half - alpha) as f64) + ln_root_factorial(c, alpha as f64);
    Ok((2.0 * ln_omega).exp())
}
