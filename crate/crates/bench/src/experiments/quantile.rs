//! Sample quantiles and mean against numerically exact values.

use gig_core::generator::{sample_gig, GigParams};
use gig_core::stats::{ks_one_sample, mean, quantile_sorted, KsResult};
use gig_core::validation::GigOracle;
use gig_core::Result;

use super::sampler_config;
use crate::output::Report;
use crate::spec::ExperimentSpec;

/// Row order of the comparison table.
pub const STATISTICS: [&str; 6] = ["q10", "q25", "q50", "mean", "q75", "q90"];
const PROBS: [f64; 6] = [0.1, 0.25, 0.5, f64::NAN, 0.75, 0.9];

#[derive(Debug, Clone, PartialEq)]
pub struct QuantileCheck {
    pub actual: [f64; 6],
    pub simulated: [f64; 6],
    pub ks: KsResult,
    pub cutoffs: usize,
    pub acceptance_rate: f64,
}

pub fn quantile_check(spec: &ExperimentSpec) -> Result<QuantileCheck> {
    let params = GigParams::new(spec.lambda, spec.psi, spec.chi)?;
    let batch = sample_gig(spec.n, &params, &sampler_config(spec))?;
    let oracle = GigOracle::new(&params)?;
    let mut xs = batch.values;
    xs.sort_by(f64::total_cmp);
    let mut actual = [0.0; 6];
    let mut simulated = [0.0; 6];
    for (i, &p) in PROBS.iter().enumerate() {
        if p.is_nan() {
            actual[i] = oracle.mean()?;
            simulated[i] = mean(&xs);
        } else {
            actual[i] = oracle.quantile(p);
            simulated[i] = quantile_sorted(&xs, p);
        }
    }
    Ok(QuantileCheck {
        actual,
        simulated,
        ks: ks_one_sample(&xs, |x| oracle.cdf(x)),
        cutoffs: batch.cutoff_count,
        acceptance_rate: batch.stats.acceptance_rate().unwrap_or(0.0),
    })
}

pub fn run(spec: &ExperimentSpec) -> Result<Report> {
    let q = quantile_check(spec)?;
    let mut report = Report::new(
        spec.clone(),
        vec!["statistic", "actual", "simulated", "abs_diff"],
    );
    for (i, name) in STATISTICS.iter().enumerate() {
        report.push(vec![
            (*name).into(),
            q.actual[i].into(),
            q.simulated[i].into(),
            (q.simulated[i] - q.actual[i]).abs().into(),
        ]);
    }
    report.set_summary("ks_statistic", q.ks.statistic);
    report.set_summary("ks_p_value", q.ks.p_value);
    report.set_summary("cutoffs", q.cutoffs);
    report.set_summary("acceptance_rate", q.acceptance_rate);
    Ok(report)
}
