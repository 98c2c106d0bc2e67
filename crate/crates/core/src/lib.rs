//! Generalized inverse Gaussian (GIG) random variates by adaptive rejection
//! sampling.
//!
//! A GIG(λ, β, β) variate with λ < 0 is the marginal of a two-stage draw:
//! `Y` from the quasi-density `h(y) F(y)` (an exponential density times an
//! inverse-gamma CDF), then `X | Y` from an inverse gamma truncated to
//! `(0, Y)`. The first stage uses rejection sampling under a piecewise
//! exponential envelope whose cutoffs are chosen from a target rejection rate
//! or a target cutoff count; the second uses a log-scale inverse-CDF draw that
//! survives arbitrarily extreme truncation.

pub mod envelope;
pub mod error;
pub mod generator;
pub mod quadrature;
pub mod rejection;
pub mod rng;
pub mod special_fn;
pub mod stats;
pub mod truncated_gamma;
pub mod validation;

pub use envelope::{
    build_envelope, count_cutoffs_curve, find_cutoffs_by_count, find_cutoffs_by_rate,
    CutoffSearchConfig, CutoffSet, Envelope, StandardParams,
};
pub use error::{Error, Result};
pub use generator::{
    derive_form, gig_pdf, sample_gig, CutoffMode, DerivedForm, GigBatch, GigParams, GigSampler,
    SamplerConfig,
};
pub use rejection::{sample_quasi_density, AcceptanceStats};
pub use special_fn::{GammaShapeRate, LogProb};

/// Crate version, for provenance in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
