//! Rejection sampling from the quasi-density `h(y) F(y)` under a
//! piecewise-exponential envelope.

use std::ops::AddAssign;

use rand::Rng;

use crate::envelope::Envelope;
use crate::error::{Error, Result};
use crate::rng::{open_uniform, std_exponential};
use crate::special_fn::inv_gamma_log_cdf_at_ln;

/// Proposal and acceptance counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AcceptanceStats {
    pub proposals: u64,
    pub accepted: u64,
}

impl AcceptanceStats {
    pub fn merge(&mut self, other: AcceptanceStats) {
        self.proposals += other.proposals;
        self.accepted += other.accepted;
    }

    /// accepted / proposals, or `None` before the first proposal.
    pub fn acceptance_rate(&self) -> Option<f64> {
        (self.proposals > 0).then(|| self.accepted as f64 / self.proposals as f64)
    }

    /// proposals / accepted, or `None` before the first acceptance.
    pub fn rejection_constant(&self) -> Option<f64> {
        (self.accepted > 0).then(|| self.proposals as f64 / self.accepted as f64)
    }
}

impl AddAssign for AcceptanceStats {
    fn add_assign(&mut self, rhs: Self) {
        self.merge(rhs);
    }
}

/// Segment index drawn with probability `z_i`.
#[inline]
pub fn sample_segment<R: Rng + ?Sized>(env: &Envelope, rng: &mut R) -> usize {
    let cum = env.cumulative_weights();
    if cum.len() == 1 {
        return 0;
    }
    let u = open_uniform(rng);
    cum.partition_point(|&c| c <= u).min(cum.len() - 1)
}

/// `Exp(rate)` conditioned on `[lower, upper)`: an unconditioned draw reduced
/// modulo the interval width, or shifted when the interval is unbounded.
#[inline]
pub fn sample_truncated_exponential<R: Rng + ?Sized>(
    rate: f64,
    lower: f64,
    upper: f64,
    rng: &mut R,
) -> Result<f64> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::domain(format!(
            "rate must be finite and > 0, got {rate}"
        )));
    }
    if !(lower >= 0.0 && lower.is_finite() && upper > lower) {
        return Err(Error::domain(format!(
            "need 0 <= lower < upper, got [{lower}, {upper})"
        )));
    }
    Ok(truncated_exponential_unchecked(rate, lower, upper, rng))
}

#[inline]
fn truncated_exponential_unchecked<R: Rng + ?Sized>(
    rate: f64,
    lower: f64,
    upper: f64,
    rng: &mut R,
) -> f64 {
    let e = std_exponential(rng) / rate;
    if upper == f64::INFINITY {
        return lower + e;
    }
    let y = lower + e % (upper - lower);
    if y < upper {
        y
    } else {
        lower
    }
}

/// One proposal: `Some(y)` if accepted.
#[inline]
fn propose<R: Rng + ?Sized>(env: &Envelope, rng: &mut R) -> Result<Option<f64>> {
    let i = sample_segment(env, rng);
    let (lo, hi) = env.segment_bounds(i);
    let y = truncated_exponential_unchecked(env.params().half_beta(), lo, hi, rng);
    debug_assert!(lo <= y && y < hi, "proposal {y} outside [{lo}, {hi})");
    // Accept with probability F(y) / F(k_{i+1}).
    let ln_ratio = inv_gamma_log_cdf_at_ln(y.ln(), env.gamma())? - env.seg_log_cdf()[i];
    debug_assert!(ln_ratio <= 1e-12);
    Ok((open_uniform(rng).ln() <= ln_ratio).then_some(y))
}

/// `n` draws from the normalized quasi-density.
pub fn sample_quasi_density<R: Rng + ?Sized>(
    n: usize,
    env: &Envelope,
    rng: &mut R,
) -> Result<(Vec<f64>, AcceptanceStats)> {
    sample_quasi_density_bounded(n, env, u64::MAX, rng)
}

/// [`sample_quasi_density`] that gives up after `budget` proposals.
pub fn sample_quasi_density_bounded<R: Rng + ?Sized>(
    n: usize,
    env: &Envelope,
    budget: u64,
    rng: &mut R,
) -> Result<(Vec<f64>, AcceptanceStats)> {
    let mut out = Vec::with_capacity(n);
    let mut stats = AcceptanceStats::default();
    while out.len() < n {
        if stats.proposals >= budget {
            return Err(Error::ProposalBudget {
                budget,
                accepted: stats.accepted,
            });
        }
        stats.proposals += 1;
        if let Some(y) = propose(env, rng)? {
            stats.accepted += 1;
            out.push(y);
        }
    }
    Ok((out, stats))
}

/// Run exactly `proposals` proposals and count acceptances.
pub fn measure_acceptance<R: Rng + ?Sized>(
    env: &Envelope,
    proposals: u64,
    rng: &mut R,
) -> Result<AcceptanceStats> {
    let mut stats = AcceptanceStats {
        proposals,
        accepted: 0,
    };
    for _ in 0..proposals {
        if propose(env, rng)?.is_some() {
            stats.accepted += 1;
        }
    }
    Ok(stats)
}
