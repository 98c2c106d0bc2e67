//! Number of cutoffs produced by the rate search as the target varies.

use gig_core::envelope::{find_cutoffs_by_rate, CutoffSearchConfig, StandardParams};
use gig_core::Result;
use rayon::prelude::*;

use crate::output::{Cell, Report};
use crate::spec::ExperimentSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub lambda: f64,
    pub beta: f64,
    pub eps0s: Vec<f64>,
    /// Per grid point: the count, or the search error.
    pub counts: Vec<std::result::Result<usize, String>>,
}

impl CurveSeries {
    /// True when every point succeeded and counts never increase with eps0.
    pub fn is_non_increasing(&self) -> bool {
        let ok: Option<Vec<usize>> = self
            .counts
            .iter()
            .map(|c| c.as_ref().ok().copied())
            .collect();
        ok.is_some_and(|v| v.windows(2).all(|w| w[0] >= w[1]))
    }

    pub fn last(&self) -> Option<usize> {
        self.counts.last().and_then(|c| c.as_ref().ok().copied())
    }
}

/// `eps0 = i / points` for `i = 1..=points`.
pub fn eps0_grid(points: usize) -> Vec<f64> {
    (1..=points).map(|i| i as f64 / points as f64).collect()
}

pub fn cutoff_curves(
    lambdas: &[f64],
    betas: &[f64],
    grid: &[f64],
    adhoc_double: bool,
) -> Result<Vec<CurveSeries>> {
    let mut pairs = Vec::new();
    for &l in lambdas {
        for &b in betas {
            pairs.push(StandardParams::new(l, b)?);
        }
    }
    Ok(pairs
        .into_par_iter()
        .map(|sp| CurveSeries {
            lambda: sp.lambda(),
            beta: sp.beta(),
            eps0s: grid.to_vec(),
            counts: grid
                .iter()
                .map(|&e| {
                    let cfg = CutoffSearchConfig::new(e).with_adhoc_double(adhoc_double);
                    find_cutoffs_by_rate(&sp, &cfg)
                        .map(|s| s.len())
                        .map_err(|err| err.to_string())
                })
                .collect(),
        })
        .collect())
}

pub fn run(spec: &ExperimentSpec) -> Result<Report> {
    let grid = eps0_grid(spec.points);
    let series = cutoff_curves(&spec.lambdas, &spec.betas, &grid, spec.adhoc_double)?;
    let mut report = Report::new(
        spec.clone(),
        vec!["lambda", "beta", "eps0", "raw_rate", "cutoffs", "error"],
    );
    for s in &series {
        for (&e, c) in s.eps0s.iter().zip(&s.counts) {
            let raw = CutoffSearchConfig::new(e)
                .with_adhoc_double(spec.adhoc_double)
                .raw_rate();
            let (count, err) = match c {
                Ok(k) => (Cell::from(*k), Cell::Null),
                Err(msg) => (Cell::Null, msg.as_str().into()),
            };
            report.push(vec![
                s.lambda.into(),
                s.beta.into(),
                e.into(),
                raw.into(),
                count,
                err,
            ]);
        }
    }
    report.set_summary(
        "non_increasing",
        series.iter().all(CurveSeries::is_non_increasing),
    );
    Ok(report)
}
