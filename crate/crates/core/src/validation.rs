//! Oracles and distributional checks: a quadrature CDF for the GIG family,
//! and goodness-of-fit checks for the building blocks of the sampler.

use rand::Rng;

use crate::envelope::{CutoffSearchConfig, CutoffSet, Envelope, StandardParams};
use crate::error::{Error, Result};
use crate::generator::GigParams;
use crate::quadrature::{integrate, QuadratureConfig};
use crate::rejection::{measure_acceptance, sample_quasi_density, sample_truncated_exponential};
use crate::rng::{open_uniform, std_exponential, StreamRng};
use crate::special_fn::{
    gig_log_norm_constant, inv_gamma_log_cdf_at_ln, LogKernel, LOG_KERNEL_CUTOFF,
};
use crate::stats::{ks_from_cdf_values, ks_one_sample, KsResult};
use crate::truncated_gamma::{ln_truncated_inv_gamma, TruncatedGammaSpec};

/// Significance level used by every check in this module.
pub const ALPHA: f64 = 0.01;

const ORACLE_PANELS: usize = 400;

/// CDF, quantiles and mean of `GIG(λ, ψ, χ)` by numerical integration of the
/// density over `t = ln x`.
#[derive(Debug, Clone)]
pub struct GigOracle {
    kernel: LogKernel,
    ln_alpha: f64,
    lo: f64,
    width: f64,
    cum: Vec<f64>,
    total: f64,
    cfg: QuadratureConfig,
}

impl GigOracle {
    pub fn new(p: &GigParams) -> Result<Self> {
        if !p.is_supported() {
            return Err(Error::UnsupportedParameters(
                "oracle requires lambda != 0, psi > 0, chi > 0".into(),
            ));
        }
        let beta = (p.psi() * p.chi()).sqrt();
        let kernel = LogKernel::new(p.lambda(), beta);
        let (lo, hi) = kernel.support(LOG_KERNEL_CUTOFF);
        let width = (hi - lo) / ORACLE_PANELS as f64;
        let cfg = QuadratureConfig {
            rel_tol: 1e-13,
            abs_tol: 1e-300,
            ..QuadratureConfig::default()
        };
        let mut cum = Vec::with_capacity(ORACLE_PANELS + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for j in 0..ORACLE_PANELS {
            let a = lo + j as f64 * width;
            acc += integrate(|t| (kernel.eval(t) - kernel.peak).exp(), a, a + width, &cfg)?.0;
            cum.push(acc);
        }
        Ok(Self {
            kernel,
            ln_alpha: 0.5 * (p.psi() / p.chi()).ln(),
            lo,
            width,
            total: acc,
            cum,
            cfg,
        })
    }

    fn cdf_t(&self, t: f64) -> f64 {
        if t <= self.lo {
            return 0.0;
        }
        let j = ((t - self.lo) / self.width).floor();
        if j >= ORACLE_PANELS as f64 {
            return 1.0;
        }
        let j = j as usize;
        let a = self.lo + j as f64 * self.width;
        let k = &self.kernel;
        let part = integrate(|s| (k.eval(s) - k.peak).exp(), a, t, &self.cfg)
            .map(|r| r.0)
            .unwrap_or(0.0);
        ((self.cum[j] + part) / self.total).min(1.0)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        self.cdf_t(x.ln() + self.ln_alpha)
    }

    /// The `x` with CDF(x) = `p`, by bisection on `ln x`.
    pub fn quantile(&self, p: f64) -> f64 {
        let (mut a, mut b) = (self.lo, self.lo + ORACLE_PANELS as f64 * self.width);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if self.cdf_t(m) < p {
                a = m;
            } else {
                b = m;
            }
        }
        (0.5 * (a + b) - self.ln_alpha).exp()
    }

    /// `K_{λ+1}(β) / (α K_λ(β))`.
    pub fn mean(&self) -> Result<f64> {
        let (l, b) = (self.kernel.lambda, self.kernel.beta);
        Ok(
            (gig_log_norm_constant(l + 1.0, b)? - gig_log_norm_constant(l, b)? - self.ln_alpha)
                .exp(),
        )
    }
}

/// Outcome of one goodness-of-fit check.
#[derive(Debug, Clone, PartialEq)]
pub struct GofReport {
    pub label: String,
    pub ks: KsResult,
}

impl GofReport {
    pub fn passed(&self) -> bool {
        self.ks.passes(ALPHA)
    }
}

/// Two-stage draws: `Y` from the quasi-density, then `X | Y` inverse gamma on
/// `(0, Y)`, tested against the quadrature CDF of `GIG(λ, β, β)`.
pub fn check_proposition1<R: Rng + ?Sized>(
    sp: &StandardParams,
    n: usize,
    rng: &mut R,
) -> Result<GofReport> {
    let env = Envelope::by_rate(sp, &CutoffSearchConfig::new(0.25))?;
    let (ys, _) = sample_quasi_density(n, &env, rng)?;
    let g = sp.inv_gamma();
    let mut xs = Vec::with_capacity(n);
    for y in ys {
        xs.push(ln_truncated_inv_gamma(&g, y.ln(), rng)?.exp());
    }
    let oracle = GigOracle::new(&GigParams::new(sp.lambda(), sp.beta(), sp.beta())?)?;
    Ok(GofReport {
        label: format!(
            "two-stage construction lambda={} beta={}",
            sp.lambda(),
            sp.beta()
        ),
        ks: ks_one_sample(&xs, |x| oracle.cdf(x)),
    })
}

/// `E - p` for `E ~ Exp(1)` against `Exp(1)` conditioned on `(-p, ∞)`.
pub fn check_shifted_exponential<R: Rng + ?Sized>(
    p: f64,
    n: usize,
    rng: &mut R,
) -> Result<GofReport> {
    if p.is_nan() || p > 0.0 {
        return Err(Error::domain(format!(
            "log tail mass must be <= 0, got {p}"
        )));
    }
    let xs: Vec<f64> = (0..n).map(|_| std_exponential(rng) - p).collect();
    Ok(GofReport {
        label: format!("shifted exponential p={p}"),
        ks: ks_one_sample(&xs, |x| if x <= -p { 0.0 } else { -(-(x + p)).exp_m1() }),
    })
}

/// Truncated gamma draws mapped through the tail function: `Q(X)/Q(t)` must
/// be uniform on (0, 1).
pub fn check_uniform_transform<R: Rng + ?Sized>(
    spec: &TruncatedGammaSpec,
    n: usize,
    rng: &mut R,
) -> Result<GofReport> {
    let g = spec.gamma();
    let ln_b = g.rate().ln();
    let mut u = Vec::with_capacity(n);
    for _ in 0..n {
        let x = spec.sample(rng)?;
        let (_, ln_q) = g.log_tails_std(x.ln() + ln_b)?;
        u.push(-(ln_q - spec.log_tail_mass()).exp_m1());
    }
    Ok(GofReport {
        label: format!(
            "uniform transform a={} b={} t={}",
            g.shape(),
            g.rate(),
            spec.threshold()
        ),
        ks: ks_from_cdf_values(u),
    })
}

/// `Exp(rate)` reduced to `(0, b - a)` and shifted by `a`, against the
/// doubly truncated law on `(a, b)`.
pub fn check_exponential_shift<R: Rng + ?Sized>(
    rate: f64,
    a: f64,
    b: f64,
    n: usize,
    rng: &mut R,
) -> Result<GofReport> {
    let mut xs = Vec::with_capacity(n);
    for _ in 0..n {
        xs.push(sample_truncated_exponential(rate, a, b, rng)?);
    }
    let (ea, eb) = ((-rate * a).exp(), (-rate * b).exp());
    Ok(GofReport {
        label: format!("exponential shift rate={rate} a={a} b={b}"),
        ks: ks_one_sample(&xs, |y| {
            ((ea - (-rate * y).exp()) / (ea - eb)).clamp(0.0, 1.0)
        }),
    })
}

/// `Exp(rate) mod a` against `Exp(rate)` truncated to `(0, a)`.
pub fn check_exponential_modulo<R: Rng + ?Sized>(
    rate: f64,
    a: f64,
    n: usize,
    rng: &mut R,
) -> Result<GofReport> {
    if !(rate > 0.0 && a > 0.0) {
        return Err(Error::domain("rate and modulus must be > 0"));
    }
    let xs: Vec<f64> = (0..n).map(|_| (std_exponential(rng) / rate) % a).collect();
    let norm = -(-rate * a).exp_m1();
    Ok(GofReport {
        label: format!("exponential modulo rate={rate} a={a}"),
        ks: ks_one_sample(&xs, |t| (-(-rate * t).exp_m1() / norm).clamp(0.0, 1.0)),
    })
}

/// Which building block a [`lemma_suite`] exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaCheck {
    ShiftedExponential,
    UniformTransform,
    ExponentialShift,
    ExponentialModulo,
}

impl LemmaCheck {
    pub const ALL: [LemmaCheck; 4] = [
        LemmaCheck::ShiftedExponential,
        LemmaCheck::UniformTransform,
        LemmaCheck::ExponentialShift,
        LemmaCheck::ExponentialModulo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaCheck::ShiftedExponential => "shifted-exponential",
            LemmaCheck::UniformTransform => "uniform-transform",
            LemmaCheck::ExponentialShift => "exponential-shift",
            LemmaCheck::ExponentialModulo => "exponential-modulo",
        }
    }
}

fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (lo.ln() + open_uniform(rng) * (hi.ln() - lo.ln())).exp()
}

/// `settings` randomized parameter draws of one check, `n` variates each.
/// Parameters come from `param_rng`; variates from `rng`.
pub fn lemma_suite(
    check: LemmaCheck,
    settings: usize,
    n: usize,
    param_rng: &mut StreamRng,
    rng: &mut StreamRng,
) -> Result<Vec<GofReport>> {
    (0..settings)
        .map(|_| match check {
            LemmaCheck::ShiftedExponential => {
                let p = -log_uniform(param_rng, 1e-3, 1e3);
                check_shifted_exponential(p, n, rng)
            }
            LemmaCheck::UniformTransform => {
                let a = log_uniform(param_rng, 0.01, 20.0);
                let b = log_uniform(param_rng, 0.01, 10.0);
                // Thresholds from the bulk out to tails far below 1e-300.
                let t = log_uniform(param_rng, 1e-3, 1e3) / b;
                let g = crate::special_fn::GammaShapeRate::new(a, b)?;
                check_uniform_transform(&TruncatedGammaSpec::new(g, t)?, n, rng)
            }
            LemmaCheck::ExponentialShift => {
                let rate = log_uniform(param_rng, 1e-4, 10.0);
                let a = log_uniform(param_rng, 1e-3, 10.0);
                let b = a + log_uniform(param_rng, 1e-3, 10.0 / rate);
                check_exponential_shift(rate, a, b, n, rng)
            }
            LemmaCheck::ExponentialModulo => {
                let rate = log_uniform(param_rng, 1e-4, 10.0);
                let a = log_uniform(param_rng, 1e-2, 1.0) / rate;
                check_exponential_modulo(rate, a, n, rng)
            }
        })
        .collect()
}

/// Count of grid points where the step function falls below `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominationReport {
    pub points: usize,
    pub violations: usize,
}

/// Compare `ln F*(y)` with `ln F(y)` on `points` log-spaced values of `y`
/// spanning the cutoffs with a margin on each side.
pub fn check_domination(env: &Envelope, points: usize) -> Result<DominationReport> {
    let logs = env.cutoff_set().log_values();
    let (lo, hi) = match (logs.first(), logs.last()) {
        (Some(&a), Some(&b)) => (a - 10.0, b + 10.0),
        _ => (-20.0, 20.0),
    };
    let g = env.gamma();
    let mut violations = 0;
    for i in 0..points {
        let ln_y = lo + (hi - lo) * i as f64 / (points.max(2) - 1) as f64;
        if env.log_step_cdf_at_ln(ln_y) < inv_gamma_log_cdf_at_ln(ln_y, g)? {
            violations += 1;
        }
    }
    Ok(DominationReport { points, violations })
}

/// Domination on `configs` random parameter and cutoff combinations. Even
/// configurations use cutoffs from the rate search at a random target; odd
/// ones use random sorted cutoffs.
pub fn random_domination_suite(
    configs: usize,
    points: usize,
    rng: &mut StreamRng,
) -> Result<Vec<DominationReport>> {
    (0..configs)
        .map(|c| {
            let sp =
                StandardParams::new(-log_uniform(rng, 1e-3, 3.0), log_uniform(rng, 1e-4, 10.0))?;
            let env = if c % 2 == 0 {
                let eps0 = 0.05 + 0.9 * open_uniform(rng);
                Envelope::by_rate(&sp, &CutoffSearchConfig::new(eps0))?
            } else {
                let k = 1 + (open_uniform(rng) * 50.0) as usize;
                let mut logs: Vec<f64> = (0..k).map(|_| -10.0 + 30.0 * open_uniform(rng)).collect();
                logs.sort_by(f64::total_cmp);
                logs.dedup();
                Envelope::new(&sp, CutoffSet::from_log_values(logs)?)?
            };
            check_domination(&env, points)
        })
        .collect()
}

/// Realized acceptance against the `1 - ε₀` guarantee of the rate search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuaranteeReport {
    pub target: f64,
    pub realized: f64,
    pub sd: f64,
    pub cutoffs: usize,
}

impl GuaranteeReport {
    /// Passes unless realized acceptance is more than three standard errors
    /// below the target.
    pub fn passed(&self) -> bool {
        self.realized >= self.target - 3.0 * self.sd
    }
}

pub fn check_rate_guarantee<R: Rng + ?Sized>(
    sp: &StandardParams,
    cfg: &CutoffSearchConfig,
    proposals: u64,
    rng: &mut R,
) -> Result<GuaranteeReport> {
    let env = Envelope::by_rate(sp, cfg)?;
    let stats = measure_acceptance(&env, proposals, rng)?;
    let target = 1.0 - cfg.eps0;
    Ok(GuaranteeReport {
        target,
        realized: stats.acceptance_rate().unwrap_or(0.0),
        sd: (target * (1.0 - target) / proposals as f64).sqrt(),
        cutoffs: env.cutoff_count(),
    })
}
