//! Empirical rejection constant with a fixed number of cutoffs, over a grid of
//! symmetric parameters `GIG(lambda, beta, beta)`.

use gig_core::generator::{GigParams, GigSampler, SamplerConfig};
use gig_core::rng::substream;
use gig_core::Result;
use rayon::prelude::*;

use crate::output::{Cell, Report};
use crate::spec::ExperimentSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct RejectionStats {
    pub cutoffs: usize,
    pub proposals: u64,
    pub accepted: u64,
    /// Proposals per accepted draw.
    pub constant: f64,
    pub constant_sd: f64,
    pub expected_constant: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RejectionCell {
    pub lambda: f64,
    pub beta: f64,
    pub k: usize,
    pub outcome: std::result::Result<RejectionStats, String>,
}

pub fn rejection_grid(
    lambdas: &[f64],
    betas: &[f64],
    ks: &[usize],
    draws: usize,
    seed: u64,
) -> Result<Vec<RejectionCell>> {
    let mut jobs = Vec::new();
    for &l in lambdas {
        for &b in betas {
            let p = GigParams::new(l, b, b)?;
            if !p.is_supported() {
                return Err(gig_core::generator::derive_form(&p).unwrap_err());
            }
            for &k in ks {
                jobs.push((p, k));
            }
        }
    }
    Ok(jobs
        .into_par_iter()
        .enumerate()
        .map(|(idx, (p, k))| {
            let outcome = (|| {
                let sampler = GigSampler::new(&p, &SamplerConfig::fixed_count(k), draws)?;
                let (_, stats) = sampler.sample(draws, &mut substream(seed, idx as u64))?;
                let acc = stats.acceptance_rate().unwrap_or(0.0);
                Ok(RejectionStats {
                    cutoffs: sampler.envelope().cutoff_count(),
                    proposals: stats.proposals,
                    accepted: stats.accepted,
                    constant: stats.rejection_constant().unwrap_or(f64::INFINITY),
                    constant_sd: ((1.0 - acc) / draws as f64).sqrt() / acc,
                    expected_constant: 1.0 / sampler.envelope().expected_acceptance()?,
                })
            })()
            .map_err(|e: gig_core::Error| e.to_string());
            RejectionCell {
                lambda: p.lambda(),
                beta: p.psi(),
                k,
                outcome,
            }
        })
        .collect())
}

pub fn run(spec: &ExperimentSpec) -> Result<Report> {
    let cells = rejection_grid(&spec.lambdas, &spec.betas, &spec.counts, spec.n, spec.seed)?;
    let mut report = Report::new(
        spec.clone(),
        vec![
            "lambda",
            "beta",
            "k",
            "draws",
            "cutoffs",
            "proposals",
            "rejection_constant",
            "constant_sd",
            "expected_constant",
            "error",
        ],
    );
    for c in &cells {
        let mut row = vec![c.lambda.into(), c.beta.into(), c.k.into(), spec.n.into()];
        match &c.outcome {
            Ok(s) => row.extend([
                s.cutoffs.into(),
                s.proposals.into(),
                s.constant.into(),
                s.constant_sd.into(),
                s.expected_constant.into(),
                Cell::Null,
            ]),
            Err(e) => {
                row.extend(std::iter::repeat_n(Cell::Null, 5));
                row.push(e.as_str().into());
            }
        }
        report.push(row);
    }
    Ok(report)
}
