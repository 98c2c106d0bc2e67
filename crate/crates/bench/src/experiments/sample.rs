use gig_core::generator::{sample_gig, GigBatch, GigParams};
use gig_core::Result;

use super::sampler_config;
use crate::output::Report;
use crate::spec::ExperimentSpec;

pub fn draw(spec: &ExperimentSpec) -> Result<GigBatch> {
    let params = GigParams::new(spec.lambda, spec.psi, spec.chi)?;
    sample_gig(spec.n, &params, &sampler_config(spec))
}

pub fn run(spec: &ExperimentSpec) -> Result<Report> {
    let batch = draw(spec)?;
    let mut report = Report::new(spec.clone(), vec!["x"]);
    for &x in &batch.values {
        report.push(vec![x.into()]);
    }
    report.set_summary("cutoffs", batch.cutoff_count);
    report.set_summary("proposals", batch.stats.proposals);
    report.set_summary("acceptance_rate", batch.stats.acceptance_rate());
    Ok(report)
}
