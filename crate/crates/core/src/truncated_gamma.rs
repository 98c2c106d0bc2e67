//! Left-truncated gamma and right-truncated inverse-gamma variates by a
//! log-scale inverse-CDF draw.
//!
//! For `X ~ Gamma(a, b)` conditioned on `X > t`, with `p = ln P(X > t)`:
//! draw `E ~ Exp(1)`, set `V = E - p`, and return the `x` with
//! `ln P(X > x) = -V`. Since `E - p` is a standard exponential conditioned on
//! exceeding `-p`, `1 - exp(-V)` is uniform on `(1 - e^p, 1)` and the result
//! has the truncated law. No step leaves log scale, so a tail mass such as
//! `e^-1000` is handled as easily as `e^-1`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::std_exponential;
use crate::special_fn::{GammaShapeRate, DEFAULT_QUANTILE_REL_TOL};

/// `Gamma(shape, rate)` conditioned on exceeding `threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedGammaSpec {
    gamma: GammaShapeRate,
    threshold: f64,
    ln_tail: f64,
}

impl TruncatedGammaSpec {
    pub fn new(gamma: GammaShapeRate, threshold: f64) -> Result<Self> {
        if !(threshold >= 0.0 && threshold.is_finite()) {
            return Err(Error::domain(format!(
                "truncation threshold must be finite and >= 0, got {threshold}"
            )));
        }
        let (_, ln_tail) = gamma.log_tails_std(threshold.ln() + gamma.rate().ln())?;
        Ok(Self {
            gamma,
            threshold,
            ln_tail,
        })
    }

    pub fn gamma(&self) -> &GammaShapeRate {
        &self.gamma
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// `p = ln P(X > threshold)` for the untruncated gamma.
    pub fn log_tail_mass(&self) -> f64 {
        self.ln_tail
    }

    /// One draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        let ln_x = draw_ln_std(&self.gamma, self.ln_tail, rng)? - self.gamma.rate().ln();
        let x = ln_x.exp();
        Ok(if x > self.threshold {
            x
        } else {
            self.threshold.next_up()
        })
    }
}

/// ln z of a standardized (unit-rate) draw given the log tail mass `ln_tail`
/// at the truncation point.
#[inline]
fn draw_ln_std<R: Rng + ?Sized>(g: &GammaShapeRate, ln_tail: f64, rng: &mut R) -> Result<f64> {
    let v = std_exponential(rng) - ln_tail;
    g.log_quantile_upper_std(-v, DEFAULT_QUANTILE_REL_TOL)
}

/// Draw `X ~ Gamma(a, b)` conditioned on `X > t`.
pub fn sample_truncated_gamma<R: Rng + ?Sized>(
    spec: &TruncatedGammaSpec,
    rng: &mut R,
) -> Result<f64> {
    spec.sample(rng)
}

/// Draw from `InverseGamma(a, b)` conditioned on `(0, upper)`, as the
/// reciprocal of a gamma draw truncated below at `1 / upper`.
pub fn sample_truncated_inv_gamma<R: Rng + ?Sized>(
    g: &GammaShapeRate,
    upper: f64,
    rng: &mut R,
) -> Result<f64> {
    if upper.is_nan() || upper <= 0.0 {
        return Err(Error::domain(format!(
            "upper bound must be > 0, got {upper}"
        )));
    }
    let ln_x = ln_truncated_inv_gamma(g, upper.ln(), rng)?;
    let x = ln_x.exp();
    Ok(if x < upper { x } else { upper.next_down() })
}

/// Natural log of an `InverseGamma(a, b)` draw conditioned on `(0, e^ln_upper)`.
/// Works entirely in log scale, so neither the bound nor the draw needs to be
/// representable as a plain `f64`.
pub(crate) fn ln_truncated_inv_gamma<R: Rng + ?Sized>(
    g: &GammaShapeRate,
    ln_upper: f64,
    rng: &mut R,
) -> Result<f64> {
    // Gamma side: threshold 1/upper, standardized ln z = ln b - ln upper.
    let ln_b = g.rate().ln();
    let (_, ln_tail) = g.log_tails_std(ln_b - ln_upper)?;
    let ln_z = draw_ln_std(g, ln_tail, rng)?;
    let ln_x = ln_b - ln_z;
    Ok(if ln_x < ln_upper {
        ln_x
    } else {
        ln_upper.next_down()
    })
}
