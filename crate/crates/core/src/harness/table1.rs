//! Mean permanent estimates over random graphs, per edge probability.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::sig6;
use crate::apps::derive_seed;
use crate::error::{Error, Result};
use crate::focksim::{
    estimate_abs_permanent_with, hoeffding_interval, probability_to_permanent, BatchConfig, StoppingRule,
    ESTIMATOR_MAX_N,
};
use crate::graphlib::{erdos_renyi, Graph};
use crate::numkernel::permanent_integer;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphEstimate {
    pub graph_seed: u64,
    pub sample_seed: u64,
    pub edges: Vec<(usize, usize)>,
    pub exact: f64,
    pub estimate: f64,
    /// Confidence interval around the estimate.
    pub interval: (f64, f64),
    /// Hoeffding band of the same width around the exact probability.
    pub exact_band: (f64, f64),
    pub total_samples: u64,
    pub postselected: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub p: f64,
    pub mu_exact: f64,
    pub mu_estimate: f64,
    /// Mean of the per-graph `exact_band` endpoints.
    pub pooled_band: (f64, f64),
    pub graphs: Vec<GraphEstimate>,
}

impl Table1Row {
    pub fn estimate_within_band(&self) -> bool {
        self.pooled_band.0 <= self.mu_estimate && self.mu_estimate <= self.pooled_band.1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Report {
    pub n: usize,
    pub graphs_per_p: usize,
    pub seed: u64,
    pub rule: StoppingRule,
    pub rows: Vec<Table1Row>,
}

impl Table1Report {
    /// Plain-text table: p, mu_exact, mu_estimate and the pooled band.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:>6} {:>12} {:>12} {:>27}", "p", "mu_exact", "mu_estimate", "pooled 95% band");
        for r in &self.rows {
            let band = format!("[{}, {}]", sig6(r.pooled_band.0), sig6(r.pooled_band.1));
            let _ = writeln!(
                out,
                "{:>6} {:>12} {:>12} {:>27}",
                format!("{:.2}", r.p),
                sig6(r.mu_exact),
                sig6(r.mu_estimate),
                band
            );
        }
        out
    }
}

/// For each `p`, draws `graphs_per_p` graphs `G(n, p)`, computes each exact
/// permanent and its post-selection estimate, and averages both. The pooled
/// band averages per-graph Hoeffding bands centred on the exact probability,
/// each with the shot count of that graph's run.
///
/// Graph `r` of grid point `i` uses seed `derive_seed(seed, 2 (i G + r))`,
/// its sampling run `derive_seed(seed, 2 (i G + r) + 1)`, where `G` is
/// `graphs_per_p`.
pub fn table1_experiment(
    p_grid: &[f64],
    graphs_per_p: usize,
    n: usize,
    rule: StoppingRule,
    seed: u64,
    batch: BatchConfig,
) -> Result<Table1Report> {
    if graphs_per_p == 0 {
        return Err(Error::Domain("need at least one graph per edge probability".into()));
    }
    if n == 0 || n > ESTIMATOR_MAX_N {
        return Err(Error::SizeLimit {
            what: "table experiment graph size",
            n,
            limit: ESTIMATOR_MAX_N,
        });
    }
    let mut rows = Vec::with_capacity(p_grid.len());
    for (i, &p) in p_grid.iter().enumerate() {
        let mut graphs = Vec::with_capacity(graphs_per_p);
        for r in 0..graphs_per_p {
            let index = 2 * (i * graphs_per_p + r) as u64;
            let graph_seed = derive_seed(seed, index);
            let sample_seed = derive_seed(seed, index + 1);
            let g: Graph = erdos_renyi(n, p, graph_seed)?;
            let exact = permanent_integer(&g.adjacency_rows())? as f64;
            let est = estimate_abs_permanent_with(&g.adjacency(), rule, sample_seed, batch)?;
            let p_exact = if exact == 0.0 { 0.0 } else { (exact / est.scale.powi(n as i32)).powi(2).min(1.0) };
            let (lo, hi) = hoeffding_interval(p_exact, est.total_samples, est.confidence)?;
            let exact_band = (
                probability_to_permanent(lo, est.scale, n),
                probability_to_permanent(hi, est.scale, n),
            );
            graphs.push(GraphEstimate {
                graph_seed,
                sample_seed,
                edges: g.edges().collect(),
                exact,
                estimate: est.abs_permanent_estimate,
                interval: est.confidence_interval,
                exact_band,
                total_samples: est.total_samples,
                postselected: est.postselected_count,
            });
        }
        let count = graphs.len() as f64;
        let mean = |f: &dyn Fn(&GraphEstimate) -> f64| graphs.iter().map(f).sum::<f64>() / count;
        rows.push(Table1Row {
            p,
            mu_exact: mean(&|g| g.exact),
            mu_estimate: mean(&|g| g.estimate),
            pooled_band: (mean(&|g| g.exact_band.0), mean(&|g| g.exact_band.1)),
            graphs,
        });
    }
    Ok(Table1Report {
        n,
        graphs_per_p,
        seed,
        rule,
        rows,
    })
}
