//! Piecewise-exponential envelope for the quasi-density `f(y) = h(y) F(y)`,
//! where `h` is the `Exp(β/2)` density and `F` the CDF of
//! `InverseGamma(-λ, β/2)`.
//!
//! Cutoffs `k_1 < ... < k_K` define the step function `F*(y) = F(k_{i+1})` on
//! `[k_i, k_{i+1})` (with `k_0 = 0`, `k_{K+1} = ∞`), so `h F*` dominates `f`.
//!
//! Cutoffs are carried as `ln k`. For `λ` close to zero the upper cutoffs can
//! be far beyond `f64::MAX`; they still count towards `K` and still bound the
//! step function, but the exponential mass above them is zero in double
//! precision, so such segments are never proposed from.

use crate::error::{Error, Result};
use crate::special_fn::{
    gig_log_norm_constant, inv_gamma_log_cdf_at_ln, inv_gamma_log_quantile_ln, log_gamma,
    GammaShapeRate,
};

/// Default cap on the number of cutoffs produced by the rate search.
pub const DEFAULT_MAX_CUTOFFS: usize = 1_000_000;

/// Default resolution of the count-driven binary search.
pub const DEFAULT_COUNT_SEARCH_TOL: f64 = 1e-6;

/// Upper end of the rate range searched by [`find_cutoffs_by_count`]. At rate
/// 2 the construction yields no cutoffs at all.
pub const MAX_RAW_RATE: f64 = 2.0;

/// Standardized parameters `GIG(λ, β, β)` with `λ < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardParams {
    lambda: f64,
    beta: f64,
}

impl StandardParams {
    pub fn new(lambda: f64, beta: f64) -> Result<Self> {
        if !(lambda < 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!(
                "standardized lambda must be finite and < 0, got {lambda}"
            )));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::domain(format!(
                "beta must be finite and > 0, got {beta}"
            )));
        }
        Ok(Self { lambda, beta })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Rate of the exponential factor `h`, `β/2`.
    pub fn half_beta(&self) -> f64 {
        0.5 * self.beta
    }

    /// `Gamma(-λ, β/2)`; `F(y)` is its upper tail at `1/y`.
    pub fn inv_gamma(&self) -> GammaShapeRate {
        GammaShapeRate::new(-self.lambda, self.half_beta()).expect("validated parameters")
    }

    /// ln ∫ h F, the acceptance probability of the naive envelope `F* = 1`.
    pub fn log_quasi_mass(&self) -> Result<f64> {
        let a = -self.lambda;
        Ok(gig_log_norm_constant(a, self.beta)? + a * self.half_beta().ln() - log_gamma(a)?)
    }
}

/// Settings of the rate-driven cutoff search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffSearchConfig {
    /// Target upper bound on the rejection rate, in `(0, 1]`.
    pub eps0: f64,
    /// Feed `2 ε₀` to the construction instead of `ε₀`. The construction's
    /// bound is conservative, so this gives fewer cutoffs while realized
    /// rejection usually stays below `ε₀`.
    pub adhoc_double: bool,
    pub max_cutoffs: usize,
}

impl CutoffSearchConfig {
    pub fn new(eps0: f64) -> Self {
        Self {
            eps0,
            adhoc_double: false,
            max_cutoffs: DEFAULT_MAX_CUTOFFS,
        }
    }

    pub fn with_adhoc_double(mut self, on: bool) -> Self {
        self.adhoc_double = on;
        self
    }

    pub fn with_max_cutoffs(mut self, cap: usize) -> Self {
        self.max_cutoffs = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps0 > 0.0 && self.eps0 <= 1.0) {
            return Err(Error::domain(format!(
                "target rejection rate must be in (0, 1], got {}",
                self.eps0
            )));
        }
        if self.max_cutoffs == 0 {
            return Err(Error::domain("max_cutoffs must be positive"));
        }
        Ok(())
    }

    /// The rate actually fed to the construction.
    pub fn raw_rate(&self) -> f64 {
        if self.adhoc_double {
            2.0 * self.eps0
        } else {
            self.eps0
        }
    }
}

/// Strictly increasing cutoffs, stored as natural logs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CutoffSet {
    log_values: Vec<f64>,
}

impl CutoffSet {
    /// From plain cutoff values, which must be positive, finite and strictly
    /// increasing.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        for (i, &k) in values.iter().enumerate() {
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::domain(format!(
                    "cutoff {i} must be finite and > 0, got {k}"
                )));
            }
        }
        Self::from_log_values(values.iter().map(|k| k.ln()).collect())
    }

    /// From `ln k` values, which must be finite and strictly increasing.
    pub fn from_log_values(log_values: Vec<f64>) -> Result<Self> {
        if let Some(i) = log_values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("log cutoff {i} is not finite")));
        }
        if let Some(i) = log_values.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!(
                "cutoffs must be strictly increasing (at index {})",
                i + 1
            )));
        }
        Ok(Self { log_values })
    }

    pub fn len(&self) -> usize {
        self.log_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_values.is_empty()
    }

    pub fn log_values(&self) -> &[f64] {
        &self.log_values
    }

    /// Plain values; entries beyond the `f64` range come out as `+∞`.
    pub fn values(&self) -> Vec<f64> {
        self.log_values.iter().map(|v| v.exp()).collect()
    }
}

/// ln(1 - e^{-x}) with x = e^{ln_x}.
fn ln_one_minus_exp_neg(ln_x: f64) -> f64 {
    if ln_x < -20.0 {
        ln_x - 0.5 * ln_x.exp()
    } else {
        (-(-ln_x.exp()).exp_m1()).ln()
    }
}

/// One iteration of the rate search, after the cutoff has been prepended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSearchStep {
    pub log_cutoff: f64,
    pub a_left: f64,
    pub a_right: f64,
}

/// Core of the rate search at raw rate `eps` in `(0, 2]`. With `limit` set,
/// stops as soon as that many cutoffs exist (for counting only). `visit` sees
/// every step.
fn rate_search<V: FnMut(RateSearchStep)>(
    sp: &StandardParams,
    eps: f64,
    cap: usize,
    limit: Option<usize>,
    mut visit: V,
) -> Result<Vec<f64>> {
    debug_assert!(eps > 0.0 && eps <= MAX_RAW_RATE);
    let g = sp.inv_gamma();
    let ln_b = sp.half_beta().ln();
    let ln_step = (-0.5 * eps).ln_1p();
    let mut ln_alpha = ln_step;
    let (mut a_l, mut a_r) = (1.0f64, 0.0f64);
    // ln(1 - e^{-b k1}) for the current smallest cutoff; k1 = ∞ gives 0.
    let mut ln_mass_k1 = 0.0;
    // Built from largest to smallest.
    let mut descending: Vec<f64> = Vec::new();

    while a_l > (a_l + a_r) * eps * 0.5 {
        if limit.is_some_and(|m| descending.len() >= m) {
            break;
        }
        if descending.len() >= cap {
            return Err(Error::CutoffCapExceeded { cap, rate: eps });
        }
        let mut ln_k0 = inv_gamma_log_quantile_ln(ln_alpha, &g)?;
        if let Some(&prev) = descending.last() {
            if ln_k0 >= prev {
                ln_k0 = prev.next_down();
            }
        }
        descending.push(ln_k0);
        ln_alpha += ln_step;

        let ln_mass_k0 = ln_one_minus_exp_neg(ln_b + ln_k0);
        let p = (ln_mass_k0 - ln_mass_k1).exp().min(1.0);
        a_r += (1.0 - p) * a_l;
        a_l *= p * (1.0 - 0.5 * eps);
        ln_mass_k1 = ln_mass_k0;
        visit(RateSearchStep {
            log_cutoff: ln_k0,
            a_left: a_l,
            a_right: a_r,
        });
    }
    descending.reverse();
    Ok(descending)
}

/// Cutoffs whose envelope keeps the rejection rate at or below the configured
/// target.
pub fn find_cutoffs_by_rate(sp: &StandardParams, cfg: &CutoffSearchConfig) -> Result<CutoffSet> {
    cfg.validate()?;
    let logs = rate_search(sp, cfg.raw_rate(), cfg.max_cutoffs, None, |_| {})?;
    Ok(CutoffSet { log_values: logs })
}

/// [`find_cutoffs_by_rate`] that also returns the loop state after every
/// iteration.
pub fn find_cutoffs_by_rate_traced(
    sp: &StandardParams,
    cfg: &CutoffSearchConfig,
) -> Result<(CutoffSet, Vec<RateSearchStep>)> {
    cfg.validate()?;
    let mut trace = Vec::new();
    let logs = rate_search(sp, cfg.raw_rate(), cfg.max_cutoffs, None, |s| trace.push(s))?;
    Ok((CutoffSet { log_values: logs }, trace))
}

/// Cutoffs from the rate search at a raw rate in `(0, 2]`, bypassing the
/// `ε₀` validation.
pub fn find_cutoffs_by_raw_rate(
    sp: &StandardParams,
    raw_rate: f64,
    max_cutoffs: usize,
) -> Result<CutoffSet> {
    if !(raw_rate > 0.0 && raw_rate <= MAX_RAW_RATE) {
        return Err(Error::domain(format!(
            "raw rate must be in (0, 2], got {raw_rate}"
        )));
    }
    let logs = rate_search(sp, raw_rate, max_cutoffs, None, |_| {})?;
    Ok(CutoffSet { log_values: logs })
}

/// Exactly `k` cutoffs, found by bisecting the rate fed to the rate search
/// until the bracket is narrower than `t0`.
pub fn find_cutoffs_by_count(
    sp: &StandardParams,
    k: usize,
    t0: f64,
    max_cutoffs: usize,
) -> Result<CutoffSet> {
    if k == 0 {
        return Err(Error::domain("requested cutoff count must be at least 1"));
    }
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(Error::domain(format!(
            "search tolerance must be in (0, 1), got {t0}"
        )));
    }
    if k > max_cutoffs {
        return Err(Error::domain(format!(
            "requested {k} cutoffs exceeds the cap of {max_cutoffs}"
        )));
    }
    let (mut l, mut r) = (0.0f64, MAX_RAW_RATE);
    let mut count_r = 0;
    while r - l > t0 {
        let m = 0.5 * (l + r);
        // Only "fewer than k or not" matters, so stop counting at k.
        let n = rate_search(sp, m, max_cutoffs, Some(k), |_| {})?.len();
        if n < k {
            r = m;
            count_r = n;
        } else {
            l = m;
        }
    }
    let probe = if l > 0.0 { l } else { t0 };
    let logs = rate_search(sp, probe, max_cutoffs, None, |_| {})?;
    if logs.len() != k {
        return Err(Error::NoSolution {
            requested: k,
            below: count_r,
            above: logs.len(),
        });
    }
    Ok(CutoffSet { log_values: logs })
}

/// `K*(ε₀)` for every `ε₀` in `grid`.
pub fn count_cutoffs_curve(
    sp: &StandardParams,
    grid: &[f64],
    adhoc_double: bool,
    max_cutoffs: usize,
) -> Result<Vec<usize>> {
    grid.iter()
        .map(|&eps0| {
            let cfg = CutoffSearchConfig {
                eps0,
                adhoc_double,
                max_cutoffs,
            };
            cfg.validate()?;
            Ok(rate_search(sp, cfg.raw_rate(), max_cutoffs, None, |_| {})?.len())
        })
        .collect()
}

/// Segment tables for the rejection sampler. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    params: StandardParams,
    gamma: GammaShapeRate,
    cutoffs: CutoffSet,
    lower: Vec<f64>,
    upper: Vec<f64>,
    seg_log_cdf: Vec<f64>,
    seg_log_mass: Vec<f64>,
    weights: Vec<f64>,
    cumulative: Vec<f64>,
    log_total: f64,
}

/// Envelope over plain cutoff values.
pub fn build_envelope(sp: &StandardParams, cutoffs: &[f64]) -> Result<Envelope> {
    Envelope::new(sp, CutoffSet::from_values(cutoffs)?)
}

impl Envelope {
    pub fn new(sp: &StandardParams, cutoffs: CutoffSet) -> Result<Self> {
        let gamma = sp.inv_gamma();
        let b = sp.half_beta();
        let logs = cutoffs.log_values();
        let k = logs.len();

        let mut lower = Vec::with_capacity(k + 1);
        lower.push(0.0);
        lower.extend(logs.iter().map(|v| v.exp()));
        let mut upper: Vec<f64> = lower[1..].to_vec();
        upper.push(f64::INFINITY);

        let mut seg_log_cdf = Vec::with_capacity(k + 1);
        for &ln_k in logs {
            seg_log_cdf.push(inv_gamma_log_cdf_at_ln(ln_k, &gamma)?);
        }
        seg_log_cdf.push(0.0);

        let seg_log_mass: Vec<f64> = lower
            .iter()
            .zip(&upper)
            .map(|(&lo, &hi)| {
                let head = -b * lo;
                if hi == f64::INFINITY || head == f64::NEG_INFINITY {
                    head
                } else {
                    head + (-(-b * (hi - lo)).exp_m1()).ln()
                }
            })
            .collect();

        let log_w: Vec<f64> = seg_log_cdf
            .iter()
            .zip(&seg_log_mass)
            .map(|(c, m)| c + m)
            .collect();
        let top = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let scaled: Vec<f64> = log_w.iter().map(|w| (w - top).exp()).collect();
        let sum: f64 = scaled.iter().sum();
        let log_total = top + sum.ln();
        let weights: Vec<f64> = scaled.iter().map(|w| w / sum).collect();
        let mut acc = 0.0;
        let mut cumulative: Vec<f64> = weights
            .iter()
            .map(|w| {
                acc += w;
                acc
            })
            .collect();
        // Pin the end so a uniform draw always lands on a segment with mass.
        let last_live = weights
            .iter()
            .rposition(|&w| w > 0.0)
            .expect("some segment has mass");
        for c in &mut cumulative[last_live..] {
            *c = 1.0;
        }

        Ok(Self {
            params: *sp,
            gamma,
            cutoffs,
            lower,
            upper,
            seg_log_cdf,
            seg_log_mass,
            weights,
            cumulative,
            log_total,
        })
    }

    /// Envelope for the cutoffs found at the given rate target.
    pub fn by_rate(sp: &StandardParams, cfg: &CutoffSearchConfig) -> Result<Self> {
        Self::new(sp, find_cutoffs_by_rate(sp, cfg)?)
    }

    /// Envelope with exactly `k` cutoffs.
    pub fn by_count(sp: &StandardParams, k: usize, t0: f64, max_cutoffs: usize) -> Result<Self> {
        Self::new(sp, find_cutoffs_by_count(sp, k, t0, max_cutoffs)?)
    }

    /// The naive envelope `F* = 1`.
    pub fn naive(sp: &StandardParams) -> Self {
        Self::new(sp, CutoffSet::default()).expect("empty cutoff set is valid")
    }

    pub fn params(&self) -> &StandardParams {
        &self.params
    }

    pub fn gamma(&self) -> &GammaShapeRate {
        &self.gamma
    }

    pub fn cutoff_set(&self) -> &CutoffSet {
        &self.cutoffs
    }

    /// Number of cutoffs `K`; there are `K + 1` segments.
    pub fn cutoff_count(&self) -> usize {
        self.cutoffs.len()
    }

    pub fn segment_count(&self) -> usize {
        self.weights.len()
    }

    /// `[k_i, k_{i+1})` for segment `i`.
    pub fn segment_bounds(&self, i: usize) -> (f64, f64) {
        (self.lower[i], self.upper[i])
    }

    /// ln F(k_{i+1}) per segment; the last entry is 0.
    pub fn seg_log_cdf(&self) -> &[f64] {
        &self.seg_log_cdf
    }

    pub fn seg_cdf(&self) -> Vec<f64> {
        self.seg_log_cdf.iter().map(|v| v.exp()).collect()
    }

    /// ln of the `h`-mass of each segment.
    pub fn seg_log_exp_mass(&self) -> &[f64] {
        &self.seg_log_mass
    }

    pub fn seg_exp_mass(&self) -> Vec<f64> {
        self.seg_log_mass.iter().map(|v| v.exp()).collect()
    }

    /// Segment probabilities `z_i`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Running sums of the weights, ending in exactly 1.
    pub fn cumulative_weights(&self) -> &[f64] {
        &self.cumulative
    }

    /// ln ∫ h F*, the total mass of the envelope.
    pub fn log_envelope_mass(&self) -> f64 {
        self.log_total
    }

    /// Index of the segment containing `y = e^{ln_y}`.
    pub fn segment_of_ln(&self, ln_y: f64) -> usize {
        self.cutoffs.log_values().partition_point(|&k| k <= ln_y)
    }

    /// ln F*(y) at `y = e^{ln_y}`.
    pub fn log_step_cdf_at_ln(&self, ln_y: f64) -> f64 {
        self.seg_log_cdf[self.segment_of_ln(ln_y)]
    }

    /// Acceptance probability of the rejection sampler under this envelope,
    /// `∫ h F / ∫ h F*`.
    pub fn expected_acceptance(&self) -> Result<f64> {
        Ok((self.params.log_quasi_mass()? - self.log_total)
            .exp()
            .min(1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn params_validate() {
        assert!(StandardParams::new(0.0, 1.0).is_err());
        assert!(StandardParams::new(0.5, 1.0).is_err());
        assert!(StandardParams::new(-0.5, 0.0).is_err());
        assert!(StandardParams::new(-0.5, f64::INFINITY).is_err());
        assert!(StandardParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn config_validate() {
        assert!(CutoffSearchConfig::new(0.0).validate().is_err());
        assert!(CutoffSearchConfig::new(1.5).validate().is_err());
        assert!(CutoffSearchConfig::new(1.0).validate().is_ok());
        assert!(CutoffSearchConfig::new(0.3)
            .with_max_cutoffs(0)
            .validate()
            .is_err());
        assert_eq!(
            CutoffSearchConfig::new(0.3)
                .with_adhoc_double(true)
                .raw_rate(),
            0.6
        );
    }

    #[test]
    fn naive_envelope() {
        let sp = StandardParams::new(-0.1, 0.1).unwrap();
        let env = build_envelope(&sp, &[]).unwrap();
        assert_eq!(env.cutoff_count(), 0);
        assert_eq!(env.weights(), &[1.0]);
        assert_eq!(env.seg_cdf(), vec![1.0]);
        assert_eq!(env.seg_exp_mass(), vec![1.0]);
        // Closed form 2 (β/2)^a K_a(β) / Γ(a) at a = 0.1, β = 0.1.
        assert!(close(
            env.expected_acceptance().unwrap(),
            0.384_383_621_271_966_7,
            1e-9
        ));
    }

    #[test]
    fn closed_form_tables() {
        // λ = -1, β = 2: F(y) = e^{-1/y}, h = Exp(1).
        let sp = StandardParams::new(-1.0, 2.0).unwrap();
        let env = build_envelope(&sp, &[0.5, 1.0, 1.5]).unwrap();
        let cdf = [(-2.0f64).exp(), (-1.0f64).exp(), (-2.0f64 / 3.0).exp(), 1.0];
        let mass = [
            1.0 - (-0.5f64).exp(),
            (-0.5f64).exp() - (-1.0f64).exp(),
            (-1.0f64).exp() - (-1.5f64).exp(),
            (-1.5f64).exp(),
        ];
        for i in 0..4 {
            assert!(close(env.seg_cdf()[i], cdf[i], 1e-12), "{i}");
            assert!(close(env.seg_exp_mass()[i], mass[i], 1e-14), "{i}");
        }
        assert_eq!(env.seg_cdf()[3], 1.0);
        let total: f64 = (0..4).map(|i| cdf[i] * mass[i]).sum();
        for i in 0..4 {
            assert!(close(env.weights()[i], cdf[i] * mass[i] / total, 1e-14));
        }
        assert!((env.seg_exp_mass().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(*env.cumulative_weights().last().unwrap(), 1.0);
    }

    #[test]
    fn build_rejects_bad_cutoffs() {
        let sp = StandardParams::new(-1.0, 2.0).unwrap();
        assert!(build_envelope(&sp, &[1.0, 1.0]).is_err());
        assert!(build_envelope(&sp, &[2.0, 1.0]).is_err());
        assert!(build_envelope(&sp, &[0.0, 1.0]).is_err());
        assert!(build_envelope(&sp, &[1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn rate_search_closed_form() {
        // First cutoffs solve F(k) = 0.6 then F(k) = 0.36.
        let sp = StandardParams::new(-1.0, 2.0).unwrap();
        let cuts = find_cutoffs_by_rate(&sp, &CutoffSearchConfig::new(0.8))
            .unwrap()
            .values();
        let n = cuts.len();
        assert!(n >= 2);
        assert!(close(cuts[n - 1], -1.0 / 0.6f64.ln(), 1e-8));
        assert!(close(cuts[n - 2], -1.0 / 0.36f64.ln(), 1e-8));
    }

    #[test]
    fn rate_search_state_is_conserved() {
        let sp = StandardParams::new(-0.01, 1e-3).unwrap();
        let (set, trace) = find_cutoffs_by_rate_traced(&sp, &CutoffSearchConfig::new(0.1)).unwrap();
        assert_eq!(set.len(), trace.len());
        for s in &trace {
            assert!(s.a_left >= 0.0 && s.a_right >= 0.0);
            assert!(s.a_left + s.a_right <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn rate_search_monotone_in_rate() {
        let sp = StandardParams::new(-0.001, 0.1).unwrap();
        let n = |e| {
            find_cutoffs_by_rate(&sp, &CutoffSearchConfig::new(e))
                .unwrap()
                .len()
        };
        assert!(n(0.1) >= n(0.5));
        assert!(n(0.5) >= n(0.9));
    }

    #[test]
    fn rate_search_cap() {
        let sp = StandardParams::new(-0.001, 1e-4).unwrap();
        let cfg = CutoffSearchConfig::new(0.01).with_max_cutoffs(10);
        assert!(matches!(
            find_cutoffs_by_rate(&sp, &cfg),
            Err(Error::CutoffCapExceeded { cap: 10, .. })
        ));
    }

    #[test]
    fn doubled_rate_at_one_gives_no_cutoffs() {
        let sp = StandardParams::new(-1.0, 2.0).unwrap();
        let cfg = CutoffSearchConfig::new(1.0).with_adhoc_double(true);
        assert!(find_cutoffs_by_rate(&sp, &cfg).unwrap().is_empty());
    }

    #[test]
    fn extreme_cutoffs_are_counted() {
        // Near λ = 0 the upper cutoffs overflow f64 but keep finite logs.
        let sp = StandardParams::new(-0.001, 1e-4).unwrap();
        let set = find_cutoffs_by_rate(&sp, &CutoffSearchConfig::new(0.25)).unwrap();
        assert!(set.log_values().iter().all(|v| v.is_finite()));
        assert!(set.values().iter().any(|v| v.is_infinite()));
        let env = Envelope::new(&sp, set).unwrap();
        assert!((env.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(env.expected_acceptance().unwrap() >= 0.75);
    }

    #[test]
    fn count_search_matches_rate_search() {
        let sp = StandardParams::new(-1.0, 2.0).unwrap();
        let k = find_cutoffs_by_rate(&sp, &CutoffSearchConfig::new(0.5))
            .unwrap()
            .len();
        let set =
            find_cutoffs_by_count(&sp, k, DEFAULT_COUNT_SEARCH_TOL, DEFAULT_MAX_CUTOFFS).unwrap();
        assert_eq!(set.len(), k);
    }

    #[test]
    fn count_search_rejects_bad_input() {
        let sp = StandardParams::new(-1.0, 2.0).unwrap();
        assert!(find_cutoffs_by_count(&sp, 0, 1e-6, 100).is_err());
        assert!(find_cutoffs_by_count(&sp, 5, 0.0, 100).is_err());
        assert!(find_cutoffs_by_count(&sp, 500, 1e-6, 100).is_err());
    }

    #[test]
    fn curve_is_non_increasing() {
        let sp = StandardParams::new(-1.0, 2.0).unwrap();
        let grid: Vec<f64> = (1..=100).map(|i| i as f64 / 100.0).collect();
        let counts = count_cutoffs_curve(&sp, &grid, false, DEFAULT_MAX_CUTOFFS).unwrap();
        assert!(counts.windows(2).all(|w| w[0] >= w[1]));
        // Undoubled, the count levels off above zero; doubled, it reaches it.
        let plain = count_cutoffs_curve(&sp, &[0.999, 1.0], false, DEFAULT_MAX_CUTOFFS).unwrap();
        assert_eq!(plain, vec![2, 2]);
        let doubled = count_cutoffs_curve(&sp, &[0.999, 1.0], true, DEFAULT_MAX_CUTOFFS).unwrap();
        assert_eq!(doubled, vec![1, 0]);
    }

    #[test]
    fn step_function_dominates() {
        let sp = StandardParams::new(-0.3, 0.7).unwrap();
        let env = Envelope::by_rate(&sp, &CutoffSearchConfig::new(0.2)).unwrap();
        let g = sp.inv_gamma();
        for i in 0..2000 {
            let ln_y = -10.0 + 20.0 * i as f64 / 1999.0;
            let f = inv_gamma_log_cdf_at_ln(ln_y, &g).unwrap();
            assert!(env.log_step_cdf_at_ln(ln_y) >= f);
        }
    }
}
