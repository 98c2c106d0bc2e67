//! Statistical self-checks of the building blocks and of the envelope.

use gig_core::envelope::{CutoffSearchConfig, StandardParams};
use gig_core::rng::substream;
use gig_core::validation::{
    check_proposition1, check_rate_guarantee, lemma_suite, random_domination_suite, LemmaCheck,
    ALPHA,
};
use gig_core::Result;
use rayon::prelude::*;

use crate::output::{Cell, Report};
use crate::spec::ExperimentSpec;

/// Parameter pairs for the quasi-density goodness-of-fit check.
pub const QUASI_DENSITY_PAIRS: [(f64, f64); 4] =
    [(-0.1, 1.0), (-1.0, 2.0), (-0.001, 1e-4), (-0.5, 0.5)];
pub const DOMINATION_CONFIGS: usize = 20;
pub const DOMINATION_POINTS: usize = 10_000;
const GUARANTEE_EPS0S: [f64; 4] = [0.1, 0.25, 0.5, 0.75];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub check: String,
    pub setting: String,
    pub statistic: f64,
    pub p_value: Option<f64>,
    pub passed: bool,
}

enum Job {
    Lemma(usize),
    QuasiDensity(usize),
    Domination,
    Guarantee(f64, f64),
}

pub fn validate_all(spec: &ExperimentSpec) -> Result<Vec<CheckRow>> {
    let mut jobs: Vec<Job> = (0..LemmaCheck::ALL.len()).map(Job::Lemma).collect();
    jobs.extend((0..QUASI_DENSITY_PAIRS.len()).map(Job::QuasiDensity));
    jobs.push(Job::Domination);
    for &l in &spec.lambdas {
        for &b in &spec.betas {
            jobs.push(Job::Guarantee(l, b));
        }
    }
    let n = spec.n;
    let seed = spec.seed;
    let groups: Vec<Vec<CheckRow>> = jobs
        .into_par_iter()
        .enumerate()
        .map(|(idx, job)| -> Result<Vec<CheckRow>> {
            let mut rng = substream(seed, 2 * idx as u64);
            match job {
                Job::Lemma(i) => {
                    let check = LemmaCheck::ALL[i];
                    let mut param_rng = substream(seed, 2 * idx as u64 + 1);
                    let reports = lemma_suite(check, spec.settings, n, &mut param_rng, &mut rng)?;
                    Ok(reports
                        .into_iter()
                        .map(|r| CheckRow {
                            check: check.name().to_string(),
                            passed: r.passed(),
                            setting: r.label,
                            statistic: r.ks.statistic,
                            p_value: Some(r.ks.p_value),
                        })
                        .collect())
                }
                Job::QuasiDensity(i) => {
                    let (l, b) = QUASI_DENSITY_PAIRS[i];
                    let r = check_proposition1(&StandardParams::new(l, b)?, n, &mut rng)?;
                    Ok(vec![CheckRow {
                        check: "quasi-density".into(),
                        passed: r.passed(),
                        setting: r.label,
                        statistic: r.ks.statistic,
                        p_value: Some(r.ks.p_value),
                    }])
                }
                Job::Domination => {
                    let reports =
                        random_domination_suite(DOMINATION_CONFIGS, DOMINATION_POINTS, &mut rng)?;
                    Ok(reports
                        .into_iter()
                        .enumerate()
                        .map(|(i, r)| CheckRow {
                            check: "domination".into(),
                            setting: format!("config {i}"),
                            statistic: r.violations as f64,
                            p_value: None,
                            passed: r.violations == 0,
                        })
                        .collect())
                }
                Job::Guarantee(l, b) => {
                    let sp = StandardParams::new(l, b)?;
                    GUARANTEE_EPS0S
                        .iter()
                        .map(|&e| {
                            let r = check_rate_guarantee(
                                &sp,
                                &CutoffSearchConfig::new(e),
                                n as u64,
                                &mut rng,
                            )?;
                            Ok(CheckRow {
                                check: "rate-guarantee".into(),
                                setting: format!("lambda={l} beta={b} eps0={e}"),
                                statistic: r.realized,
                                p_value: None,
                                passed: r.passed(),
                            })
                        })
                        .collect()
                }
            }
        })
        .collect::<Result<_>>()?;
    Ok(groups.into_iter().flatten().collect())
}

pub fn run(spec: &ExperimentSpec) -> Result<Report> {
    let rows = validate_all(spec)?;
    let mut report = Report::new(
        spec.clone(),
        vec!["check", "setting", "statistic", "p_value", "passed"],
    );
    for r in &rows {
        report.push(vec![
            r.check.as_str().into(),
            r.setting.as_str().into(),
            r.statistic.into(),
            Cell::from(r.p_value),
            r.passed.into(),
        ]);
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    report.set_summary("alpha", ALPHA);
    report.set_summary("failed", failed);
    report.set_summary("all_passed", failed == 0);
    Ok(report)
}
