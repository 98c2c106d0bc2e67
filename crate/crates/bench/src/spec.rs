//! Experiment descriptions. The same shape is accepted as a JSON config file
//! and echoed under `spec` in JSON output.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    Sample,
    AcceptanceGrid,
    QuantileCheck,
    CutoffCurve,
    TimingGrid,
    RejectionGrid,
    Validate,
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExperimentId::Sample => "sample",
            ExperimentId::AcceptanceGrid => "acceptance-grid",
            ExperimentId::QuantileCheck => "quantile-check",
            ExperimentId::CutoffCurve => "cutoff-curve",
            ExperimentId::TimingGrid => "timing-grid",
            ExperimentId::RejectionGrid => "rejection-grid",
            ExperimentId::Validate => "validate",
        };
        f.write_str(s)
    }
}

/// How an acceptance grid builds its envelopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GridMode {
    /// No cutoffs.
    Naive,
    /// One cell per entry of `eps0s`.
    Rate,
    /// One cell per entry of `counts`.
    Count,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub experiment: ExperimentId,
    /// Single-distribution parameters (`sample`, `quantile-check`,
    /// `timing-grid`).
    pub lambda: f64,
    pub psi: f64,
    pub chi: f64,
    /// Grid parameters.
    pub lambdas: Vec<f64>,
    pub betas: Vec<f64>,
    /// Draws per replicate or per cell.
    pub n: usize,
    pub replicates: usize,
    pub mode: GridMode,
    /// Single rate target; with `cutoffs` unset and this unset the sampler
    /// picks a target from `n`.
    pub eps0: Option<f64>,
    pub cutoffs: Option<usize>,
    pub eps0s: Vec<f64>,
    pub counts: Vec<usize>,
    pub adhoc_double: bool,
    pub sample_sizes: Vec<usize>,
    /// Grid resolution of `cutoff-curve`.
    pub points: usize,
    /// Randomized parameter settings per check in `validate`.
    pub settings: usize,
    pub seed: u64,
    pub parallel: bool,
}

pub const DEFAULT_SEED: u64 = 20_240_601;

const NAIVE_LAMBDAS: [f64; 4] = [-0.001, -0.01, -0.1, -1.0];
const NAIVE_BETAS: [f64; 4] = [1e-4, 1e-3, 1e-2, 0.1];
const COMPARISON_GRID: [f64; 4] = [0.1, 0.5, 1.0, 1.5];

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self::defaults(ExperimentId::Sample)
    }
}

impl ExperimentSpec {
    /// Defaults for one experiment.
    pub fn defaults(id: ExperimentId) -> Self {
        let base = Self {
            experiment: id,
            lambda: -0.1,
            psi: 1.0,
            chi: 1.0,
            lambdas: NAIVE_LAMBDAS.to_vec(),
            betas: NAIVE_BETAS.to_vec(),
            n: 100_000,
            replicates: 30,
            mode: GridMode::Naive,
            eps0: None,
            cutoffs: None,
            eps0s: vec![0.75, 0.5, 0.25, 0.1],
            counts: vec![1, 5, 10, 50],
            adhoc_double: false,
            sample_sizes: vec![1, 10, 100, 1_000, 10_000],
            points: 500,
            settings: 5,
            seed: DEFAULT_SEED,
            parallel: false,
        };
        match id {
            ExperimentId::Sample => Self { n: 10, ..base },
            ExperimentId::AcceptanceGrid | ExperimentId::CutoffCurve | ExperimentId::Validate => {
                base
            }
            ExperimentId::QuantileCheck => Self {
                eps0: Some(0.25),
                ..base
            },
            ExperimentId::TimingGrid => Self {
                lambda: 0.1,
                psi: 0.1,
                chi: 0.1,
                eps0s: vec![0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9],
                ..base
            },
            ExperimentId::RejectionGrid => Self {
                lambdas: COMPARISON_GRID.to_vec(),
                betas: COMPARISON_GRID.to_vec(),
                counts: vec![10, 20, 40, 80, 160, 320],
                n: 50_000,
                ..base
            },
        }
    }

    /// Parse a JSON config. Missing fields take the defaults of the config's
    /// own `experiment`, or of `fallback` when that is absent too.
    pub fn from_json(text: &str, fallback: ExperimentId) -> Result<Self, String> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| format!("invalid config: {e}"))?;
        let serde_json::Value::Object(overrides) = value else {
            return Err("config must be a JSON object".into());
        };
        let id = match overrides.get("experiment") {
            Some(v) => ExperimentId::deserialize(v).map_err(|e| format!("invalid config: {e}"))?,
            None => fallback,
        };
        let serde_json::Value::Object(mut merged) =
            serde_json::to_value(Self::defaults(id)).map_err(|e| e.to_string())?
        else {
            unreachable!("specs serialize to objects");
        };
        merged.extend(overrides);
        serde_json::from_value(serde_json::Value::Object(merged))
            .map_err(|e| format!("invalid config: {e}"))
    }

    /// Structural checks; numerical validity is left to the library.
    pub fn validate(&self) -> Result<(), String> {
        if self.replicates == 0 {
            return Err("replicates must be at least 1".into());
        }
        if self.n == 0 {
            return Err("n must be at least 1".into());
        }
        if self.eps0.is_some() && self.cutoffs.is_some() {
            return Err("eps0 and cutoffs are mutually exclusive".into());
        }
        let grid = matches!(
            self.experiment,
            ExperimentId::AcceptanceGrid | ExperimentId::CutoffCurve | ExperimentId::RejectionGrid
        );
        if grid && (self.lambdas.is_empty() || self.betas.is_empty()) {
            return Err("parameter grids must be non-empty".into());
        }
        match self.experiment {
            ExperimentId::AcceptanceGrid
                if self.mode == GridMode::Rate && self.eps0s.is_empty() =>
            {
                Err("rate mode needs at least one eps0".into())
            }
            ExperimentId::AcceptanceGrid | ExperimentId::RejectionGrid
                if self.mode == GridMode::Count && self.counts.is_empty() =>
            {
                Err("count mode needs at least one cutoff count".into())
            }
            ExperimentId::RejectionGrid if self.counts.is_empty() => {
                Err("counts must be non-empty".into())
            }
            ExperimentId::TimingGrid if self.eps0s.is_empty() || self.sample_sizes.is_empty() => {
                Err("timing grid needs eps0s and sample sizes".into())
            }
            ExperimentId::TimingGrid if self.sample_sizes.contains(&0) => {
                Err("sample sizes must be positive".into())
            }
            ExperimentId::CutoffCurve if self.points == 0 => {
                Err("points must be at least 1".into())
            }
            ExperimentId::Validate if self.settings == 0 => {
                Err("settings must be at least 1".into())
            }
            _ => Ok(()),
        }
    }
}
