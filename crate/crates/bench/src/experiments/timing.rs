//! Wall-clock cost per variate over (eps0, sample size), with each phase timed
//! separately so that a linear cost model can be fitted:
//! `(T1 + T2) K / N + T3 / p + T4`, where `p` is the acceptance probability.

use std::hint::black_box;
use std::time::Instant;

use gig_core::envelope::{find_cutoffs_by_rate, CutoffSearchConfig};
use gig_core::generator::{derive_form, GigParams, GigSampler};
use gig_core::rejection::sample_quasi_density;
use gig_core::rng::substream;
use gig_core::stats::quantile_sorted;
use gig_core::Result;
use rayon::prelude::*;

use super::mean_sd;
use crate::output::Report;
use crate::spec::ExperimentSpec;

/// Summed phase durations (seconds) and work counts of one cell.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhaseTotals {
    pub search: f64,
    pub setup: f64,
    pub propose: f64,
    pub transform: f64,
    pub cutoffs: usize,
    pub proposals: u64,
    pub draws: usize,
}

impl PhaseTotals {
    fn add(&mut self, o: &PhaseTotals) {
        self.search += o.search;
        self.setup += o.setup;
        self.propose += o.propose;
        self.transform += o.transform;
        self.cutoffs += o.cutoffs;
        self.proposals += o.proposals;
        self.draws += o.draws;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingCell {
    pub eps0: f64,
    pub n: usize,
    pub cutoffs: usize,
    pub expected_acceptance: f64,
    /// Natural log of seconds per variate, one entry per replicate.
    pub log_times: Vec<f64>,
    pub totals: PhaseTotals,
}

impl TimingCell {
    pub fn mean_log_time(&self) -> f64 {
        mean_sd(&self.log_times).0
    }

    pub fn median_log_time(&self) -> f64 {
        let mut v = self.log_times.clone();
        v.sort_by(f64::total_cmp);
        quantile_sorted(&v, 0.5)
    }
}

/// Per-unit costs in seconds: per cutoff searched, per cutoff set up, per
/// proposal, per transformed variate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostModel {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
}

impl CostModel {
    pub fn fit(cells: &[TimingCell]) -> Self {
        let mut t = PhaseTotals::default();
        for c in cells {
            t.add(&c.totals);
        }
        let per = |secs: f64, count: f64| if count > 0.0 { secs / count } else { 0.0 };
        Self {
            t1: per(t.search, t.cutoffs as f64),
            t2: per(t.setup, t.cutoffs as f64),
            t3: per(t.propose, t.proposals as f64),
            t4: per(t.transform, t.draws as f64),
        }
    }

    pub fn predict_log_time(&self, cutoffs: usize, n: usize, acceptance: f64) -> f64 {
        ((self.t1 + self.t2) * cutoffs as f64 / n as f64 + self.t3 / acceptance + self.t4).ln()
    }
}

pub struct TimingConfig<'a> {
    pub params: GigParams,
    pub eps0s: &'a [f64],
    pub sizes: &'a [usize],
    pub adhoc_double: bool,
    pub replicates: usize,
    pub seed: u64,
    pub parallel: bool,
}

pub fn timing_grid(cfg: &TimingConfig<'_>) -> Result<Vec<TimingCell>> {
    let sp = derive_form(&cfg.params)?.standard;
    let mut jobs = Vec::new();
    for &n in cfg.sizes {
        for &e in cfg.eps0s {
            let search = CutoffSearchConfig::new(e).with_adhoc_double(cfg.adhoc_double);
            search.validate()?;
            jobs.push((e, n, search));
        }
    }
    let cell =
        |idx: usize, (eps0, n, search): (f64, usize, CutoffSearchConfig)| -> Result<TimingCell> {
            let mut rng = substream(cfg.seed, idx as u64);
            let mut totals = PhaseTotals::default();
            let mut log_times = Vec::with_capacity(cfg.replicates);
            let mut cutoffs = 0;
            let mut expected = 1.0;
            for _ in 0..cfg.replicates {
                let t0 = Instant::now();
                let set = find_cutoffs_by_rate(&sp, &search)?;
                let t1 = Instant::now();
                cutoffs = set.len();
                let sampler = GigSampler::from_cutoffs(&cfg.params, set)?;
                let t2 = Instant::now();
                let (ys, stats) = sample_quasi_density(n, sampler.envelope(), &mut rng)?;
                let t3 = Instant::now();
                black_box(sampler.transform(&ys, &mut rng)?);
                let t4 = Instant::now();
                expected = sampler.envelope().expected_acceptance()?;
                totals.add(&PhaseTotals {
                    search: (t1 - t0).as_secs_f64(),
                    setup: (t2 - t1).as_secs_f64(),
                    propose: (t3 - t2).as_secs_f64(),
                    transform: (t4 - t3).as_secs_f64(),
                    cutoffs,
                    proposals: stats.proposals,
                    draws: n,
                });
                log_times.push(((t4 - t0).as_secs_f64() / n as f64).max(1e-12).ln());
            }
            Ok(TimingCell {
                eps0,
                n,
                cutoffs,
                expected_acceptance: expected,
                log_times,
                totals,
            })
        };
    if cfg.parallel {
        jobs.into_par_iter()
            .enumerate()
            .map(|(i, j)| cell(i, j))
            .collect()
    } else {
        jobs.into_iter()
            .enumerate()
            .map(|(i, j)| cell(i, j))
            .collect()
    }
}

/// For each cell, whether it has the smallest mean log time among cells with
/// the same sample size.
pub fn column_minima(cells: &[TimingCell]) -> Vec<bool> {
    cells
        .iter()
        .map(|c| {
            let best = cells
                .iter()
                .filter(|o| o.n == c.n)
                .map(TimingCell::mean_log_time)
                .fold(f64::INFINITY, f64::min);
            c.mean_log_time() == best
        })
        .collect()
}

pub fn run(spec: &ExperimentSpec) -> Result<Report> {
    let cfg = TimingConfig {
        params: GigParams::new(spec.lambda, spec.psi, spec.chi)?,
        eps0s: &spec.eps0s,
        sizes: &spec.sample_sizes,
        adhoc_double: spec.adhoc_double,
        replicates: spec.replicates,
        seed: spec.seed,
        parallel: spec.parallel,
    };
    let cells = timing_grid(&cfg)?;
    let model = CostModel::fit(&cells);
    let minima = column_minima(&cells);
    let mut report = Report::new(
        spec.clone(),
        vec![
            "eps0",
            "n",
            "replicates",
            "cutoffs",
            "mean_log_time",
            "median_log_time",
            "model_log_time",
            "column_min",
        ],
    );
    for (c, &is_min) in cells.iter().zip(&minima) {
        report.push(vec![
            c.eps0.into(),
            c.n.into(),
            c.log_times.len().into(),
            c.cutoffs.into(),
            c.mean_log_time().into(),
            c.median_log_time().into(),
            model
                .predict_log_time(c.cutoffs, c.n, c.expected_acceptance)
                .into(),
            is_min.into(),
        ]);
    }
    report.set_summary("t1_search", model.t1);
    report.set_summary("t2_setup", model.t2);
    report.set_summary("t3_proposal", model.t3);
    report.set_summary("t4_transform", model.t4);
    Ok(report)
}
