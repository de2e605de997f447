//! Probability boosting by row scaling (`A_w`) and diagonal shift (`A + eps I`).

use std::io::Write;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{derive_seed, first_up_crossing, last_down_crossing, Backend, SampledConfig};
use crate::encoder::encode;
use crate::error::{Error, Result};
use crate::focksim::{
    estimate_from_circuit, postselection_probability, probability_to_permanent, EstimationResult,
};
use crate::numkernel::{permanent_exact, solve_vandermonde, svd, ComplexMatrix};

/// `(w^2 - 1) delta <= CONDI2_FRACTION * Trace(A A^T)` is read as "much
/// smaller than".
pub const CONDI2_FRACTION: f64 = 0.1;

/// Largest order for the principal-minor expansion behind the coefficient
/// bracket of `Per(A + eps I)`.
const MINOR_EXPANSION_MAX_N: usize = 16;

fn require_real(a: &ComplexMatrix) -> Result<usize> {
    let n = a.order()?;
    if !a.is_real() {
        return Err(Error::Domain("boosting needs a real matrix".into()));
    }
    Ok(n)
}

/// Quantities of the scaled row that control `sigma_max(A_w)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowStatistics {
    /// `sum_j |a_cj|`.
    pub gamma: f64,
    /// `sum_j a_cj^2`.
    pub delta: f64,
    /// `Trace(A A^T)`, the sum of squared singular values.
    pub trace: f64,
    /// Largest absolute row sum.
    pub inf_norm: f64,
    pub sigma_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowBoostPoint {
    pub w: f64,
    pub sigma_max: f64,
    /// Exact post-selection probability of the encoded `A_w`.
    pub probability: f64,
    /// `p_w / p_1`; absent when `Per(A) = 0`.
    pub ratio: Option<f64>,
    /// `sigma_max(A) / sigma_max(A_w) > w^(-1/n)`.
    pub necessary_condition: bool,
    /// `w gamma < ||A||_inf`.
    pub condi1: bool,
    /// `(w^2 - 1) delta <= CONDI2_FRACTION * Trace(A A^T)`.
    pub condi2: bool,
    /// `(w^2 - 1) delta / Trace(A A^T)`.
    pub condi2_ratio: f64,
    /// Lower and upper bounds on `sigma_max(A_w)` from the trace and from
    /// `sqrt(n) max(w gamma, ||A||_inf)`.
    pub sigma_bounds: (f64, f64),
    /// `s_w^n sqrt(p_w) / w`, which equals `|Per(A)|`.
    pub recovered_permanent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowBoostScan {
    pub row: usize,
    pub n: usize,
    pub permanent: f64,
    pub baseline_probability: f64,
    pub stats: RowStatistics,
    /// Bounds on `sigma_max(A)`: `sqrt(Trace / n)` and `sqrt(n) ||A||_inf`.
    pub sigma_bounds: (f64, f64),
    pub points: Vec<RowBoostPoint>,
    /// Largest grid `w` with `R > 1`.
    pub last_boosted_w: Option<f64>,
    /// Interpolated `w` where `R` last falls back to 1.
    pub crossing_w: Option<f64>,
}

impl RowBoostScan {
    pub fn max_ratio(&self) -> Option<(f64, f64)> {
        self.points
            .iter()
            .filter_map(|p| p.ratio.map(|r| (p.w, r)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "w,sigma_max,probability,ratio,necessary_condition,condi1,condi2")?;
        for p in &self.points {
            let ratio = p.ratio.map_or(String::new(), |r| format!("{r:.17e}"));
            writeln!(
                out,
                "{},{:.17e},{:.17e},{},{},{},{}",
                p.w, p.sigma_max, p.probability, ratio, p.necessary_condition, p.condi1, p.condi2
            )?;
        }
        Ok(())
    }
}

fn row_statistics(a: &ComplexMatrix, c: usize, sigma_max: f64) -> RowStatistics {
    RowStatistics {
        gamma: a.row(c).iter().map(|z| z.re.abs()).sum(),
        delta: a.row(c).iter().map(|z| z.re * z.re).sum(),
        trace: a.frobenius_sq(),
        inf_norm: a.inf_norm(),
        sigma_max,
    }
}

fn check_row_scan_input(a: &ComplexMatrix, c: usize, grid: &[f64]) -> Result<usize> {
    let n = require_real(a)?;
    if c >= n {
        return Err(Error::Domain(format!("row {c} out of range for order {n}")));
    }
    if grid.is_empty() || grid.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::Domain("scaling factors must be finite and positive".into()));
    }
    Ok(n)
}

/// Scans `A_w` (row `c` multiplied by `w`) over `grid` with exact circuit
/// probabilities.
pub fn boost_row_scan(a: &ComplexMatrix, c: usize, grid: &[f64]) -> Result<RowBoostScan> {
    let n = check_row_scan_input(a, c, grid)?;
    let permanent = permanent_exact(a)?.norm();
    let sigma = svd(a)?.sigma_max();
    let stats = row_statistics(a, c, sigma);
    let baseline = postselection_probability(&encode(a)?)?;
    let nf = n as f64;
    let points = grid
        .par_iter()
        .map(|&w| {
            let aw = a.with_row_scaled(c, w.into());
            let circuit = encode(&aw)?;
            let p = postselection_probability(&circuit)?;
            let sw = circuit.scale;
            let growth = (w * w - 1.0) * stats.delta;
            Ok(RowBoostPoint {
                w,
                sigma_max: sw,
                probability: p,
                ratio: (permanent > 0.0).then(|| p / baseline),
                necessary_condition: sigma / sw > w.powf(-1.0 / nf),
                condi1: w * stats.gamma < stats.inf_norm,
                condi2: growth <= CONDI2_FRACTION * stats.trace,
                condi2_ratio: growth / stats.trace,
                sigma_bounds: (
                    ((stats.trace + growth) / nf).sqrt(),
                    nf.sqrt() * (w * stats.gamma).max(stats.inf_norm),
                ),
                recovered_permanent: probability_to_permanent(p, sw, n) / w,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ws: Vec<f64> = points.iter().map(|p| p.w).collect();
    let ratios: Vec<f64> = points.iter().map(|p| p.ratio.unwrap_or(f64::NAN)).collect();
    Ok(RowBoostScan {
        row: c,
        n,
        permanent,
        baseline_probability: baseline,
        sigma_bounds: ((stats.trace / nf).sqrt(), nf.sqrt() * stats.inf_norm),
        stats,
        last_boosted_w: points
            .iter()
            .rev()
            .find(|p| p.ratio.is_some_and(|r| r > 1.0))
            .map(|p| p.w),
        crossing_w: last_down_crossing(&ws, &ratios),
        points,
    })
}

/// One sampled point of a row-boost scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowBoostSample {
    pub w: f64,
    pub estimation: EstimationResult,
    /// `estimate / w`.
    pub recovered_permanent: f64,
    /// Confidence interval of the estimate divided by `w`.
    pub recovered_interval: (f64, f64),
}

/// Sampled counterpart of [`boost_row_scan`]: estimates `|Per(A_w)|` at each
/// `w` under the configured stopping rule and divides by `w`.
pub fn boost_row_scan_sampled(
    a: &ComplexMatrix,
    c: usize,
    grid: &[f64],
    config: SampledConfig,
) -> Result<Vec<RowBoostSample>> {
    check_row_scan_input(a, c, grid)?;
    grid.iter()
        .enumerate()
        .map(|(i, &w)| {
            let circuit = encode(&a.with_row_scaled(c, w.into()))?;
            let est = estimate_from_circuit(&circuit, config.rule, derive_seed(config.seed, i as u64), config.batch)?;
            Ok(RowBoostSample {
                w,
                recovered_permanent: est.abs_permanent_estimate / w,
                recovered_interval: (est.confidence_interval.0 / w, est.confidence_interval.1 / w),
                estimation: est,
            })
        })
        .collect()
}

/// Sums of principal-minor permanents: `c_i = sum_{|S| = n - i} Per(A[S, S])`,
/// so `Per(A + eps I) = sum_i c_i eps^i`.
pub fn principal_minor_sums(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = a.order()?;
    if n > MINOR_EXPANSION_MAX_N {
        return Err(Error::SizeLimit {
            what: "principal-minor expansion",
            n,
            limit: MINOR_EXPANSION_MAX_N,
        });
    }
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    for size in 1..=n {
        let mut total = 0.0;
        for s in (0..n).combinations(size) {
            total += permanent_exact(&a.select(&s, &s))?.re;
        }
        c[n - size] = total;
    }
    Ok(c)
}

fn shifted(a: &ComplexMatrix, eps: f64) -> ComplexMatrix {
    let mut b = a.clone();
    for i in 0..a.rows() {
        b[(i, i)] += eps;
    }
    b
}

fn require_non_negative(a: &ComplexMatrix) -> Result<usize> {
    let n = require_real(a)?;
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)].re < 0.0 {
                return Err(Error::NegativeEntry { row: i, col: j });
            }
        }
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonPoint {
    pub eps: f64,
    pub sigma_max: f64,
    pub permanent: f64,
    pub probability: f64,
    pub ratio: Option<f64>,
    /// Sample-cost proxy `sigma_max^(4n)`.
    pub cost: f64,
    /// `cost / cost at eps = 0`.
    pub cost_ratio: f64,
    /// `sqrt(sigma_min(A)^2 + 2 eps Trace(A) / n + eps^2)` and
    /// `sqrt(n) (||A||_inf + eps)`.
    pub sigma_bounds: (f64, f64),
    /// `lambda_min * G` and `lambda_max * G` with `G = sum_{i<=n} eps^i`.
    pub permanent_bounds: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonScan {
    pub n: usize,
    pub permanent: f64,
    pub baseline_probability: f64,
    /// Expansion coefficients `c_0 = Per(A), ..., c_n = 1`.
    pub coefficients: Vec<f64>,
    pub points: Vec<EpsilonPoint>,
    /// `Per(A + eps I)` never decreases along the sorted grid.
    pub permanent_non_decreasing: bool,
    /// Interpolated `eps` where the cost ratio first exceeds 1.
    pub crossing_eps: Option<f64>,
}

impl EpsilonScan {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "eps,sigma_max,permanent,probability,ratio,cost_ratio")?;
        for p in &self.points {
            let ratio = p.ratio.map_or(String::new(), |r| format!("{r:.17e}"));
            writeln!(
                out,
                "{},{:.17e},{:.17e},{:.17e},{},{:.17e}",
                p.eps, p.sigma_max, p.permanent, p.probability, ratio, p.cost_ratio
            )?;
        }
        Ok(())
    }
}

/// `1 + eps + ... + eps^n`.
fn geometric_sum(eps: f64, n: usize) -> f64 {
    if (eps - 1.0).abs() < 1e-12 {
        (n + 1) as f64
    } else {
        (eps.powi(n as i32 + 1) - 1.0) / (eps - 1.0)
    }
}

/// Scans `A + eps I` over `grid` (sorted ascending) with exact values.
pub fn boost_epsilon(a: &ComplexMatrix, grid: &[f64]) -> Result<EpsilonScan> {
    let n = require_non_negative(a)?;
    if grid.is_empty() || grid.iter().any(|&e| !(e >= 0.0 && e.is_finite())) {
        return Err(Error::Domain("shifts must be finite and non-negative".into()));
    }
    let mut grid = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let base = svd(a)?;
    let sigma = base.sigma_max();
    let sigma_min = base.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    let permanent = permanent_exact(a)?.re;
    let baseline = postselection_probability(&encode(a)?)?;
    let coefficients = principal_minor_sums(a)?;
    let lambda_max = coefficients.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lambda_min = coefficients.iter().copied().fold(f64::INFINITY, f64::min);
    let trace = a.trace().re;
    let nf = n as f64;
    let points = grid
        .par_iter()
        .map(|&eps| {
            let b = shifted(a, eps);
            let circuit = encode(&b)?;
            let p = postselection_probability(&circuit)?;
            let s = circuit.scale;
            let g = geometric_sum(eps, n);
            Ok(EpsilonPoint {
                eps,
                sigma_max: s,
                permanent: permanent_exact(&b)?.re,
                probability: p,
                ratio: (baseline > 0.0).then(|| p / baseline),
                cost: s.powf(4.0 * nf),
                cost_ratio: (s / sigma).powf(4.0 * nf),
                sigma_bounds: (
                    (sigma_min * sigma_min + 2.0 * eps * trace / nf + eps * eps).sqrt(),
                    nf.sqrt() * (a.inf_norm() + eps),
                ),
                permanent_bounds: (lambda_min * g, lambda_max * g),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let permanent_non_decreasing = points
        .windows(2)
        .all(|w| w[1].permanent >= w[0].permanent - 1e-9 * w[0].permanent.abs().max(1.0))
        && points.iter().all(|p| p.permanent >= permanent - 1e-9 * permanent.abs().max(1.0));
    let eps: Vec<f64> = points.iter().map(|p| p.eps).collect();
    let costs: Vec<f64> = points.iter().map(|p| p.cost_ratio).collect();
    Ok(EpsilonScan {
        n,
        permanent,
        baseline_probability: baseline,
        coefficients,
        crossing_eps: first_up_crossing(&eps, &costs),
        permanent_non_decreasing,
        points,
    })
}

/// Result of recovering `Per(A)` from shifted permanents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonRecovery {
    pub permanent: f64,
    pub coefficients: Vec<f64>,
    pub eps_points: Vec<f64>,
    pub values: Vec<f64>,
    pub condition: f64,
    pub resampled: bool,
    pub backend: Backend,
    pub estimations: Vec<EstimationResult>,
}

/// Range for automatically drawn shifts.
const EPS_RANGE: (f64, f64) = (0.0, 2.0);

fn draw_eps(count: usize, seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.random_range(EPS_RANGE.0..EPS_RANGE.1)).collect()
}

fn recover_at(a: &ComplexMatrix, eps_points: Vec<f64>, backend: Backend, stream: u64) -> Result<EpsilonRecovery> {
    let mut values = Vec::with_capacity(eps_points.len());
    let mut estimations = Vec::new();
    for (i, &e) in eps_points.iter().enumerate() {
        let (v, est) = backend.permanent_value(&shifted(a, e), stream + i as u64)?;
        values.push(v);
        estimations.extend(est);
    }
    let sol = solve_vandermonde(&eps_points, &values)?;
    Ok(EpsilonRecovery {
        permanent: sol.coefficients[0],
        coefficients: sol.coefficients,
        eps_points,
        values,
        condition: sol.condition,
        resampled: false,
        backend,
        estimations,
    })
}

/// Recovers `Per(A)` as the constant term of `eps -> Per(A + eps I)` from
/// `n + 1` values.
///
/// Without explicit points, shifts are drawn uniformly from `[0, 2)` with
/// `seed`, and redrawn once if the system is near-singular.
pub fn recover_permanent_from_epsilon(
    a: &ComplexMatrix,
    eps_points: Option<Vec<f64>>,
    backend: Backend,
    seed: u64,
) -> Result<EpsilonRecovery> {
    let n = require_non_negative(a)?;
    match eps_points {
        Some(pts) => {
            if pts.len() != n + 1 {
                return Err(Error::Domain(format!("need {} shifts, got {}", n + 1, pts.len())));
            }
            if pts.iter().any(|&e| !(e >= 0.0 && e.is_finite())) {
                return Err(Error::Domain("shifts must be finite and non-negative".into()));
            }
            recover_at(a, pts, backend, 0)
        }
        None => match recover_at(a, draw_eps(n + 1, seed), backend, 0) {
            Err(Error::IllConditioned(_)) => {
                let retry = draw_eps(n + 1, derive_seed(seed, u64::from(u32::MAX)));
                let mut r = recover_at(a, retry, backend, (n + 1) as u64)?;
                r.resampled = true;
                Ok(r)
            }
            other => other,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pendant() -> ComplexMatrix {
        crate::graphlib::k5_with_pendant().adjacency()
    }

    #[test]
    fn unit_weight_has_unit_ratio() {
        let a = pendant();
        let scan = boost_row_scan(&a, 5, &[1.0, 2.0]).unwrap();
        assert!((scan.points[0].ratio.unwrap() - 1.0).abs() < 1e-12);
        for p in &scan.points {
            assert!((p.recovered_permanent - scan.permanent).abs() < 1e-8);
        }
    }

    #[test]
    fn zero_permanent_skips_ratios() {
        let a = ComplexMatrix::from_real_rows(&[[0.0, 1.0, 1.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]]).unwrap();
        let scan = boost_row_scan(&a, 0, &[1.0, 2.0]).unwrap();
        assert!(scan.points.iter().all(|p| p.ratio.is_none()));
        assert_eq!(scan.crossing_w, None);
    }

    #[test]
    fn row_scan_input_checks() {
        let a = pendant();
        assert!(boost_row_scan(&a, 6, &[1.0]).is_err());
        assert!(boost_row_scan(&a, 0, &[0.0]).is_err());
        assert!(boost_row_scan(&a.scale(num_complex::Complex64::i()), 0, &[1.0]).is_err());
    }

    #[test]
    fn minor_sums_of_identity_are_binomial() {
        let c = principal_minor_sums(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(c, vec![1.0, 4.0, 6.0, 4.0, 1.0]);
    }

    #[test]
    fn epsilon_scan_basics() {
        let a = pendant();
        let scan = boost_epsilon(&a, &[0.0, 0.5, 1.0, 5.0, 5000.0]).unwrap();
        assert!((scan.points[0].ratio.unwrap() - 1.0).abs() < 1e-12);
        assert!(scan.permanent_non_decreasing);
        assert!(scan.points.last().unwrap().probability > 0.99);
        assert_eq!(scan.coefficients[0], 9.0);
        let p1 = &scan.points[2];
        assert!(p1.permanent_bounds.0 <= p1.permanent && p1.permanent <= p1.permanent_bounds.1);
    }

    #[test]
    fn negative_entries_rejected() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, -1.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(boost_epsilon(&a, &[0.0]), Err(Error::NegativeEntry { row: 0, col: 1 })));
    }

    #[test]
    fn recover_identity_and_pendant() {
        let r = recover_permanent_from_epsilon(&ComplexMatrix::identity(3), None, Backend::Exact, 1).unwrap();
        assert!((r.permanent - 1.0).abs() < 1e-9);
        let r = recover_permanent_from_epsilon(&pendant(), None, Backend::Exact, 2).unwrap();
        assert!((r.permanent - 9.0).abs() < 1e-6, "{}", r.permanent);
    }
}
