use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{derive_seed, Backend};
use crate::error::{Error, Result};
use crate::focksim::EstimationResult;
use crate::graphlib::{is_isospectral, Graph};
use crate::numkernel::{eval_poly, solve_vandermonde, ComplexMatrix};

/// Evaluation points are drawn uniformly from this interval. Non-positive
/// points make `M - xI` entrywise non-negative (adjacency) or positive
/// semidefinite (Laplacian), so `Per(xI - M)` has sign `(-1)^n`.
pub const POINT_RANGE: (f64, f64) = (-2.0, -0.1);

/// Relative tolerance for comparing exact polynomial values.
const EXACT_MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixFamily {
    Adjacency,
    Laplacian,
}

impl MatrixFamily {
    pub fn matrix(&self, g: &Graph) -> ComplexMatrix {
        match self {
            Self::Adjacency => g.adjacency(),
            Self::Laplacian => g.laplacian(),
        }
    }
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Adjacency => "adjacency",
            Self::Laplacian => "laplacian",
        })
    }
}

/// Coefficients of `P(x) = Per(xI - M) = sum_i c_i x^i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialResult {
    pub family: MatrixFamily,
    pub coefficients: Vec<f64>,
    pub points: Vec<f64>,
    pub values: Vec<f64>,
    pub condition: f64,
    /// `max_j |sum_i c_i x_j^i - P(x_j)|`.
    pub residual: f64,
    pub resampled: bool,
    pub backend: Backend,
    pub estimations: Vec<EstimationResult>,
}

impl PolynomialResult {
    pub fn evaluate(&self, x: f64) -> f64 {
        eval_poly(&self.coefficients, x)
    }
}

/// `count` points uniform in [`POINT_RANGE`].
pub fn random_points(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| rng.random_range(POINT_RANGE.0..POINT_RANGE.1))
        .collect()
}

fn shifted(m: &ComplexMatrix, x: f64) -> ComplexMatrix {
    // x I - M
    let mut b = m.scale_real(-1.0);
    for i in 0..m.rows() {
        b[(i, i)] += x;
    }
    b
}

/// `P(x)` at one point. The sampled backend estimates `|Per(M - xI)|` and
/// restores the sign `(-1)^n`, which needs `x <= 0`.
fn value_at(m: &ComplexMatrix, x: f64, backend: &Backend, index: u64) -> Result<(f64, Option<EstimationResult>)> {
    if backend.is_exact() {
        return backend.permanent_value(&shifted(m, x), index);
    }
    if x > 0.0 {
        return Err(Error::Domain(format!(
            "sampled evaluation needs points x <= 0 for the sign rule, got {x}"
        )));
    }
    let (magnitude, est) = backend.permanent_value(&shifted(m, x).scale_real(-1.0), index)?;
    let sign = if m.rows().is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((sign * magnitude, est))
}

fn solve_at(
    m: &ComplexMatrix,
    family: MatrixFamily,
    backend: Backend,
    points: Vec<f64>,
    stream: u64,
) -> Result<PolynomialResult> {
    let mut values = Vec::with_capacity(points.len());
    let mut estimations = Vec::new();
    for (j, &x) in points.iter().enumerate() {
        let (v, est) = value_at(m, x, &backend, stream + j as u64)?;
        values.push(v);
        estimations.extend(est);
    }
    let sol = solve_vandermonde(&points, &values)?;
    let residual = points
        .iter()
        .zip(&values)
        .map(|(&x, &y)| (eval_poly(&sol.coefficients, x) - y).abs())
        .fold(0.0, f64::max);
    Ok(PolynomialResult {
        family,
        coefficients: sol.coefficients,
        points,
        values,
        condition: sol.condition,
        residual,
        resampled: false,
        backend,
        estimations,
    })
}

/// Recovers the permanental polynomial of `g` from `n + 1` point values.
///
/// Without explicit `points`, `n + 1` are drawn from [`POINT_RANGE`] using
/// `seed`; if that Vandermonde system is near-singular a second set is drawn
/// once before failing.
pub fn permanental_polynomial(
    g: &Graph,
    family: MatrixFamily,
    backend: Backend,
    points: Option<Vec<f64>>,
    seed: u64,
) -> Result<PolynomialResult> {
    let n = g.n();
    let m = family.matrix(g);
    match points {
        Some(p) => {
            if p.len() != n + 1 {
                return Err(Error::Domain(format!("need {} evaluation points, got {}", n + 1, p.len())));
            }
            solve_at(&m, family, backend, p, 0)
        }
        None => match solve_at(&m, family, backend, random_points(n + 1, seed), 0) {
            Err(Error::IllConditioned(_)) => {
                let retry = random_points(n + 1, derive_seed(seed, u64::from(u32::MAX)));
                let mut r = solve_at(&m, family, backend, retry, (n + 1) as u64)?;
                r.resampled = true;
                Ok(r)
            }
            other => other,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Distinguished,
    Undistinguished,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Distinguished => "DISTINGUISHED",
            Self::Undistinguished => "UNDISTINGUISHED",
        })
    }
}

/// Outcome of comparing two graphs' permanental polynomials at random points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistinguishResult {
    pub verdict: Verdict,
    pub family: MatrixFamily,
    pub isospectral: bool,
    pub points: Vec<f64>,
    pub values_first: Vec<f64>,
    pub values_second: Vec<f64>,
    /// Index of the first point that separated the graphs.
    pub witness: Option<usize>,
    pub backend: Backend,
    pub estimations: Vec<EstimationResult>,
}

/// Compares `Per(xI - M(g1))` and `Per(xI - M(g2))` at `trials` random
/// points.
///
/// The exact backend compares signed values; the sampled backend declares a
/// difference only when the two confidence intervals on `|Per|` are
/// disjoint. Isomorphic graphs have identical polynomials, so an exact
/// `Distinguished` verdict is always correct.
pub fn poly_distinguish(
    g1: &Graph,
    g2: &Graph,
    family: MatrixFamily,
    backend: Backend,
    trials: usize,
    seed: u64,
) -> Result<DistinguishResult> {
    let points = random_points(trials, seed);
    let mut result = DistinguishResult {
        verdict: Verdict::Undistinguished,
        family,
        isospectral: false,
        points: points.clone(),
        values_first: Vec::new(),
        values_second: Vec::new(),
        witness: None,
        backend,
        estimations: Vec::new(),
    };
    if g1.n() != g2.n() {
        result.verdict = Verdict::Distinguished;
        return Ok(result);
    }
    result.isospectral = is_isospectral(g1, g2)?;
    let (m1, m2) = (family.matrix(g1), family.matrix(g2));
    for (i, &x) in points.iter().enumerate() {
        let (v1, e1) = value_at(&m1, x, &backend, 2 * i as u64)?;
        let (v2, e2) = value_at(&m2, x, &backend, 2 * i as u64 + 1)?;
        result.values_first.push(v1);
        result.values_second.push(v2);
        let differs = match (&e1, &e2) {
            (Some(a), Some(b)) => {
                a.confidence_interval.1 < b.confidence_interval.0 || b.confidence_interval.1 < a.confidence_interval.0
            }
            _ => (v1 - v2).abs() > EXACT_MATCH_TOL * v1.abs().max(v2.abs()).max(1.0),
        };
        result.estimations.extend(e1.into_iter().chain(e2));
        if differs && result.witness.is_none() {
            result.witness = Some(i);
            result.verdict = Verdict::Distinguished;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::focksim::StoppingRule;
    use crate::graphlib::erdos_renyi;
    use crate::numkernel::permanent_exact;

    #[test]
    fn edgeless_is_monomial() {
        let r = permanental_polynomial(&Graph::empty(4), MatrixFamily::Adjacency, Backend::Exact, None, 1).unwrap();
        for (i, c) in r.coefficients.iter().enumerate() {
            let expected = if i == 4 { 1.0 } else { 0.0 };
            assert!((c - expected).abs() < 1e-8, "c_{i} = {c}");
        }
    }

    #[test]
    fn k3_adjacency_matches_direct_values() {
        let g = Graph::complete(3);
        let r = permanental_polynomial(&g, MatrixFamily::Adjacency, Backend::Exact, None, 5).unwrap();
        for x in [0.3, 1.7, -4.0, 2.5] {
            let direct = permanent_exact(&shifted(&g.adjacency(), x)).unwrap().re;
            assert!((r.evaluate(x) - direct).abs() < 1e-8 * direct.abs().max(1.0));
        }
        assert!((r.coefficients[3] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn explicit_points_must_match_degree() {
        assert!(
            permanental_polynomial(&Graph::complete(3), MatrixFamily::Laplacian, Backend::Exact, Some(vec![-1.0]), 0)
                .is_err()
        );
    }

    #[test]
    fn sampled_requires_non_positive_points() {
        let b = Backend::sampled(StoppingRule::fixed(100), 1);
        let pts = Some(vec![-1.0, -0.5, 0.5]);
        assert!(permanental_polynomial(&Graph::path(2), MatrixFamily::Adjacency, b, pts, 0).is_err());
    }

    #[test]
    fn sampled_values_carry_sign() {
        let b = Backend::sampled(StoppingRule::fixed(20_000), 8);
        let r = permanental_polynomial(&Graph::complete(3), MatrixFamily::Adjacency, b, None, 3).unwrap();
        assert!(r.values.iter().all(|&v| v <= 0.0));
        assert_eq!(r.estimations.len(), 4);
    }

    #[test]
    fn relabeled_graph_is_undistinguished() {
        let g = erdos_renyi(6, 0.5, 4).unwrap();
        let h = g.relabel(&[4, 2, 0, 5, 1, 3]).unwrap();
        for family in [MatrixFamily::Adjacency, MatrixFamily::Laplacian] {
            let r = poly_distinguish(&g, &h, family, Backend::Exact, 3, 9).unwrap();
            assert_eq!(r.verdict, Verdict::Undistinguished);
            assert!(r.isospectral);
        }
    }

    #[test]
    fn k3_vs_p3_distinguished() {
        let r = poly_distinguish(&Graph::complete(3), &Graph::path(3), MatrixFamily::Laplacian, Backend::Exact, 2, 0)
            .unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
        assert_eq!(r.witness, Some(0));
        assert!(!r.isospectral);
    }
}
