//! The experiment runners. Each exposes a typed entry point used by the
//! acceptance tests and a `run` that renders a [`Report`].
//!
//! Cells draw from `substream(seed, cell_index)`, so results do not depend on
//! how cells are scheduled across threads.

pub mod acceptance;
pub mod curve;
pub mod quantile;
pub mod rejection;
pub mod sample;
pub mod timing;
pub mod validate;

use gig_core::generator::{CutoffMode, SamplerConfig};
use gig_core::Result;

use crate::output::Report;
use crate::spec::{ExperimentId, ExperimentSpec};

pub fn run(spec: &ExperimentSpec) -> Result<Report> {
    match spec.experiment {
        ExperimentId::Sample => sample::run(spec),
        ExperimentId::AcceptanceGrid => acceptance::run(spec),
        ExperimentId::QuantileCheck => quantile::run(spec),
        ExperimentId::CutoffCurve => curve::run(spec),
        ExperimentId::TimingGrid => timing::run(spec),
        ExperimentId::RejectionGrid => rejection::run(spec),
        ExperimentId::Validate => validate::run(spec),
    }
}

/// Sampler settings for the single-distribution experiments.
pub fn sampler_config(spec: &ExperimentSpec) -> SamplerConfig {
    let mode = match (spec.cutoffs, spec.eps0) {
        (Some(k), _) => CutoffMode::FixedCount(k),
        (None, Some(e)) => CutoffMode::TargetRate(e),
        (None, None) => CutoffMode::Auto,
    };
    SamplerConfig {
        mode,
        ..SamplerConfig::default()
    }
    .with_adhoc_double(spec.adhoc_double)
    .with_seed(spec.seed)
}

/// Mean and sample standard deviation.
pub(crate) fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (m, 0.0);
    }
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, v.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_sd_small_cases() {
        assert_eq!(mean_sd(&[2.0]), (2.0, 0.0));
        let (m, s) = mean_sd(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sampler_mode_selection() {
        let mut spec = ExperimentSpec::defaults(ExperimentId::Sample);
        assert_eq!(sampler_config(&spec).mode, CutoffMode::Auto);
        spec.eps0 = Some(0.3);
        assert_eq!(sampler_config(&spec).mode, CutoffMode::TargetRate(0.3));
        spec.eps0 = None;
        spec.cutoffs = Some(4);
        assert_eq!(sampler_config(&spec).mode, CutoffMode::FixedCount(4));
    }
}
