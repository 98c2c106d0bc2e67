//! Acceptance probability over a (lambda, beta) grid of standardized
//! parameters, under one envelope construction per cell.

use gig_core::envelope::{
    CutoffSearchConfig, Envelope, StandardParams, DEFAULT_COUNT_SEARCH_TOL, DEFAULT_MAX_CUTOFFS,
};
use gig_core::rejection::measure_acceptance;
use gig_core::rng::substream;
use gig_core::Result;
use rayon::prelude::*;

use super::mean_sd;
use crate::output::{Cell, Report};
use crate::spec::{ExperimentSpec, GridMode};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Setting {
    Naive,
    Rate(f64),
    Count(usize),
}

impl Setting {
    pub fn mode(&self) -> &'static str {
        match self {
            Setting::Naive => "naive",
            Setting::Rate(_) => "rate",
            Setting::Count(_) => "count",
        }
    }

    fn value(&self) -> Cell {
        match *self {
            Setting::Naive => Cell::Null,
            Setting::Rate(e) => e.into(),
            Setting::Count(k) => k.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellStats {
    pub cutoffs: usize,
    pub mean: f64,
    pub sd: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcceptanceCell {
    pub lambda: f64,
    pub beta: f64,
    pub setting: Setting,
    /// Rate handed to the cutoff search, after optional doubling.
    pub raw_rate: Option<f64>,
    pub outcome: std::result::Result<CellStats, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub lambdas: Vec<f64>,
    pub betas: Vec<f64>,
    pub settings: Vec<Setting>,
    pub adhoc_double: bool,
    pub replicates: usize,
    pub proposals: u64,
    pub seed: u64,
}

impl GridConfig {
    pub fn from_spec(spec: &ExperimentSpec) -> Self {
        let settings = match spec.mode {
            GridMode::Naive => vec![Setting::Naive],
            GridMode::Rate => spec.eps0s.iter().map(|&e| Setting::Rate(e)).collect(),
            GridMode::Count => spec.counts.iter().map(|&k| Setting::Count(k)).collect(),
        };
        Self {
            lambdas: spec.lambdas.clone(),
            betas: spec.betas.clone(),
            settings,
            adhoc_double: spec.adhoc_double,
            replicates: spec.replicates,
            proposals: spec.n as u64,
            seed: spec.seed,
        }
    }

    fn search_config(&self, eps0: f64) -> CutoffSearchConfig {
        CutoffSearchConfig::new(eps0).with_adhoc_double(self.adhoc_double)
    }
}

/// Cells in (lambda, beta, setting) order. Parameter and rate errors are
/// returned up front; failures while building a cell's envelope are kept in
/// that cell.
pub fn acceptance_grid(cfg: &GridConfig) -> Result<Vec<AcceptanceCell>> {
    let mut jobs = Vec::new();
    for &lambda in &cfg.lambdas {
        for &beta in &cfg.betas {
            let sp = StandardParams::new(lambda, beta)?;
            for &setting in &cfg.settings {
                if let Setting::Rate(e) = setting {
                    cfg.search_config(e).validate()?;
                }
                jobs.push((sp, setting));
            }
        }
    }
    Ok(jobs
        .into_par_iter()
        .enumerate()
        .map(|(idx, (sp, setting))| run_cell(cfg, idx as u64, &sp, setting))
        .collect())
}

fn run_cell(cfg: &GridConfig, idx: u64, sp: &StandardParams, setting: Setting) -> AcceptanceCell {
    let raw_rate = match setting {
        Setting::Rate(e) => Some(cfg.search_config(e).raw_rate()),
        _ => None,
    };
    let outcome = (|| {
        let env = match setting {
            Setting::Naive => Envelope::naive(sp),
            Setting::Rate(e) => Envelope::by_rate(sp, &cfg.search_config(e))?,
            Setting::Count(k) => {
                Envelope::by_count(sp, k, DEFAULT_COUNT_SEARCH_TOL, DEFAULT_MAX_CUTOFFS)?
            }
        };
        let mut rng = substream(cfg.seed, idx);
        let rates = (0..cfg.replicates)
            .map(|_| {
                Ok(measure_acceptance(&env, cfg.proposals, &mut rng)?
                    .acceptance_rate()
                    .unwrap_or(0.0))
            })
            .collect::<Result<Vec<f64>>>()?;
        let (mean, sd) = mean_sd(&rates);
        Ok(CellStats {
            cutoffs: env.cutoff_count(),
            mean,
            sd,
            expected: env.expected_acceptance()?,
        })
    })()
    .map_err(|e: gig_core::Error| e.to_string());
    AcceptanceCell {
        lambda: sp.lambda(),
        beta: sp.beta(),
        setting,
        raw_rate,
        outcome,
    }
}

pub fn run(spec: &ExperimentSpec) -> Result<Report> {
    let cfg = GridConfig::from_spec(spec);
    let cells = acceptance_grid(&cfg)?;
    let mut report = Report::new(
        spec.clone(),
        vec![
            "lambda",
            "beta",
            "mode",
            "setting",
            "raw_rate",
            "cutoffs",
            "replicates",
            "proposals",
            "mean_acceptance",
            "sd_acceptance",
            "expected_acceptance",
            "error",
        ],
    );
    for c in &cells {
        let (cutoffs, mean, sd, expected, error) = match &c.outcome {
            Ok(s) => (
                s.cutoffs.into(),
                s.mean.into(),
                s.sd.into(),
                s.expected.into(),
                Cell::Null,
            ),
            Err(e) => (
                Cell::Null,
                Cell::Null,
                Cell::Null,
                Cell::Null,
                e.as_str().into(),
            ),
        };
        report.push(vec![
            c.lambda.into(),
            c.beta.into(),
            c.setting.mode().into(),
            c.setting.value(),
            c.raw_rate.into(),
            cutoffs,
            cfg.replicates.into(),
            cfg.proposals.into(),
            mean,
            sd,
            expected,
            error,
        ]);
    }
    let failed = cells.iter().filter(|c| c.outcome.is_err()).count();
    report.set_summary("failed_cells", failed);
    Ok(report)
}
