//! The user-facing GIG(λ, ψ, χ) generator.
//!
//! Parameters are reduced to the standardized form `GIG(λ', β, β)` with
//! `λ' < 0` (inverting when `λ > 0`), the envelope is set up once, and each
//! variate is `X' / α` where `X' | Y` is an inverse gamma truncated to
//! `(0, Y)` and `Y` is drawn from the quasi-density.

use rand::Rng;

use crate::envelope::{
    find_cutoffs_by_count, find_cutoffs_by_rate, CutoffSearchConfig, CutoffSet, Envelope,
    StandardParams, DEFAULT_COUNT_SEARCH_TOL, DEFAULT_MAX_CUTOFFS,
};
use crate::error::{Error, Result};
use crate::rejection::{sample_quasi_density, AcceptanceStats};
use crate::rng::stream;
use crate::special_fn::gig_log_norm_constant;
use crate::truncated_gamma::ln_truncated_inv_gamma;

/// Parameters of `GIG(λ, ψ, χ)`, density ∝ `x^{λ-1} exp(-(χ/x + ψx)/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GigParams {
    lambda: f64,
    psi: f64,
    chi: f64,
}

impl GigParams {
    /// Accepts the full parameter domain of the family, including the
    /// gamma and inverse-gamma boundaries.
    pub fn new(lambda: f64, psi: f64, chi: f64) -> Result<Self> {
        if !(lambda.is_finite() && psi.is_finite() && chi.is_finite()) {
            return Err(Error::domain(format!(
                "parameters must be finite, got ({lambda}, {psi}, {chi})"
            )));
        }
        let ok = if lambda > 0.0 {
            psi > 0.0 && chi >= 0.0
        } else if lambda == 0.0 {
            psi > 0.0 && chi > 0.0
        } else {
            psi >= 0.0 && chi > 0.0
        };
        if !ok {
            return Err(Error::domain(format!(
                "(lambda={lambda}, psi={psi}, chi={chi}) is outside the GIG parameter domain"
            )));
        }
        Ok(Self { lambda, psi, chi })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    /// True when the generator handles these parameters.
    pub fn is_supported(&self) -> bool {
        self.lambda != 0.0 && self.psi > 0.0 && self.chi > 0.0
    }
}

/// Standardized form of a supported parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedForm {
    pub standard: StandardParams,
    /// `√(ψ/χ)` after any swap; variates of the standardized form are divided
    /// by it.
    pub alpha: f64,
    /// Input `λ > 0`: the standardized draw is for the reciprocal.
    pub sign_flag: bool,
}

pub fn derive_form(p: &GigParams) -> Result<DerivedForm> {
    if p.lambda == 0.0 {
        return Err(Error::UnsupportedParameters(
            "lambda = 0 is not supported".into(),
        ));
    }
    if p.chi == 0.0 {
        return Err(Error::UnsupportedParameters(
            "chi = 0 is the gamma boundary, not supported".into(),
        ));
    }
    if p.psi == 0.0 {
        return Err(Error::UnsupportedParameters(
            "psi = 0 is the inverse-gamma boundary, not supported".into(),
        ));
    }
    let sign_flag = p.lambda > 0.0;
    let (lambda, psi, chi) = if sign_flag {
        (-p.lambda, p.chi, p.psi)
    } else {
        (p.lambda, p.psi, p.chi)
    };
    let beta = (psi * chi).sqrt();
    let alpha = (psi / chi).sqrt();
    if !(beta > 0.0 && beta.is_finite() && alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::UnsupportedParameters(format!(
            "psi = {psi}, chi = {chi} give a scale outside the f64 range"
        )));
    }
    Ok(DerivedForm {
        standard: StandardParams::new(lambda, beta)?,
        alpha,
        sign_flag,
    })
}

/// How the envelope cutoffs are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CutoffMode {
    /// Rate target picked from the sample size by [`auto_eps0`].
    Auto,
    /// Target upper bound on the rejection rate.
    TargetRate(f64),
    /// Exact number of cutoffs.
    FixedCount(usize),
}

/// Rate target used by [`CutoffMode::Auto`]: 0.5 up to 10 draws, 0.1 beyond
/// 1000, linear in between.
pub fn auto_eps0(n: usize) -> f64 {
    if n <= 10 {
        0.5
    } else if n >= 1000 {
        0.1
    } else {
        0.5 - 0.4 * (n - 10) as f64 / 990.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub mode: CutoffMode,
    pub adhoc_double: bool,
    /// Resolution of the count-driven search.
    pub t0: f64,
    pub seed: u64,
    pub max_cutoffs: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            mode: CutoffMode::Auto,
            adhoc_double: false,
            t0: DEFAULT_COUNT_SEARCH_TOL,
            seed: 0,
            max_cutoffs: DEFAULT_MAX_CUTOFFS,
        }
    }
}

impl SamplerConfig {
    pub fn target_rate(eps0: f64) -> Self {
        Self {
            mode: CutoffMode::TargetRate(eps0),
            ..Self::default()
        }
    }

    pub fn fixed_count(k: usize) -> Self {
        Self {
            mode: CutoffMode::FixedCount(k),
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_adhoc_double(mut self, on: bool) -> Self {
        self.adhoc_double = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t0 > 0.0 && self.t0 < 1.0) {
            return Err(Error::domain(format!(
                "t0 must be in (0, 1), got {}",
                self.t0
            )));
        }
        match self.mode {
            CutoffMode::TargetRate(eps0) => self.search_config(eps0).validate(),
            CutoffMode::FixedCount(0) => Err(Error::domain("cutoff count must be at least 1")),
            _ => Ok(()),
        }
    }

    fn search_config(&self, eps0: f64) -> CutoffSearchConfig {
        CutoffSearchConfig {
            eps0,
            adhoc_double: self.adhoc_double,
            max_cutoffs: self.max_cutoffs,
        }
    }
}

/// A prepared generator: parameters reduced and envelope built, ready for any
/// number of draws.
#[derive(Debug, Clone)]
pub struct GigSampler {
    params: GigParams,
    form: DerivedForm,
    envelope: Envelope,
}

impl GigSampler {
    /// Set up for the given configuration. `n_hint` is only used by
    /// [`CutoffMode::Auto`].
    pub fn new(params: &GigParams, cfg: &SamplerConfig, n_hint: usize) -> Result<Self> {
        cfg.validate()?;
        let form = derive_form(params)?;
        let sp = &form.standard;
        let cutoffs = match cfg.mode {
            CutoffMode::Auto => find_cutoffs_by_rate(sp, &cfg.search_config(auto_eps0(n_hint)))?,
            CutoffMode::TargetRate(eps0) => find_cutoffs_by_rate(sp, &cfg.search_config(eps0))?,
            CutoffMode::FixedCount(k) => find_cutoffs_by_count(sp, k, cfg.t0, cfg.max_cutoffs)?,
        };
        Self::from_cutoffs(params, cutoffs)
    }

    /// Set up from cutoffs of the standardized form chosen elsewhere.
    pub fn from_cutoffs(params: &GigParams, cutoffs: CutoffSet) -> Result<Self> {
        let form = derive_form(params)?;
        Ok(Self {
            params: *params,
            envelope: Envelope::new(&form.standard, cutoffs)?,
            form,
        })
    }

    pub fn params(&self) -> &GigParams {
        &self.params
    }

    pub fn form(&self) -> &DerivedForm {
        &self.form
    }

    pub fn envelope(&self) -> &Envelope {
        &self.envelope
    }

    /// `n` variates.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        n: usize,
        rng: &mut R,
    ) -> Result<(Vec<f64>, AcceptanceStats)> {
        let (ys, stats) = sample_quasi_density(n, &self.envelope, rng)?;
        Ok((self.transform(&ys, rng)?, stats))
    }

    /// Second stage: one variate per quasi-density draw `y`, from the
    /// inverse gamma truncated to `(0, y)`, rescaled and inverted as needed.
    pub fn transform<R: Rng + ?Sized>(&self, ys: &[f64], rng: &mut R) -> Result<Vec<f64>> {
        let g = self.envelope.gamma();
        let ln_alpha = self.form.alpha.ln();
        let mut out = Vec::with_capacity(ys.len());
        for &y in ys {
            let ln_y = y.ln();
            let ln_x = ln_truncated_inv_gamma(g, ln_y, rng)?;
            debug_assert!(
                ln_x < ln_y,
                "conditional draw {ln_x} not below ln Y = {ln_y}"
            );
            let ln_x = ln_x - ln_alpha;
            let x = if self.form.sign_flag {
                (-ln_x).exp()
            } else {
                ln_x.exp()
            };
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::Convergence(format!(
                    "variate e^{ln_x} is outside the f64 range"
                )));
            }
            out.push(x);
        }
        Ok(out)
    }
}

/// Output of [`sample_gig`].
#[derive(Debug, Clone, PartialEq)]
pub struct GigBatch {
    pub values: Vec<f64>,
    pub stats: AcceptanceStats,
    pub cutoff_count: usize,
    /// ln of the standardized-form cutoffs.
    pub log_cutoffs: Vec<f64>,
}

/// `n` variates from `GIG(λ, ψ, χ)` using a stream seeded from `cfg.seed`.
pub fn sample_gig(n: usize, p: &GigParams, cfg: &SamplerConfig) -> Result<GigBatch> {
    if n == 0 {
        return Err(Error::domain("sample size must be at least 1"));
    }
    let sampler = GigSampler::new(p, cfg, n)?;
    let (values, stats) = sampler.sample(n, &mut stream(cfg.seed))?;
    let cutoffs = sampler.envelope.cutoff_set();
    Ok(GigBatch {
        values,
        stats,
        cutoff_count: cutoffs.len(),
        log_cutoffs: cutoffs.log_values().to_vec(),
    })
}

/// ln of the normalized GIG density.
pub fn gig_log_pdf(x: f64, p: &GigParams) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(format!(
            "density argument must be > 0, got {x}"
        )));
    }
    if !p.is_supported() {
        return Err(Error::UnsupportedParameters(
            "density requires lambda != 0, psi > 0, chi > 0".into(),
        ));
    }
    let (l, psi, chi) = (p.lambda, p.psi, p.chi);
    let ln_norm = gig_log_norm_constant(l, (psi * chi).sqrt())?;
    Ok(0.5 * l * (psi / chi).ln() - ln_norm + (l - 1.0) * x.ln() - 0.5 * (chi / x + psi * x))
}

/// Normalized GIG density.
pub fn gig_pdf(x: f64, p: &GigParams) -> Result<f64> {
    Ok(gig_log_pdf(x, p)?.exp())
}
