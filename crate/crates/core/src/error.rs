use thiserror::Error;

/// Errors produced by the sampler and its numerical kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method did not reach its tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Parameters are valid GIG parameters but belong to a sub-family
    /// this generator does not handle.
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    /// The rate-driven cutoff search exceeded its iteration cap.
    #[error("cutoff search exceeded {cap} cutoffs at rate {rate}")]
    CutoffCapExceeded { cap: usize, rate: f64 },

    /// The count-driven cutoff search cannot produce exactly the requested
    /// number of cutoffs at the configured resolution.
    #[error(
        "no rate yields exactly {requested} cutoffs (nearest achievable: {below} and {above})"
    )]
    NoSolution {
        requested: usize,
        below: usize,
        above: usize,
    },

    /// The rejection sampler ran out of its proposal budget.
    #[error("proposal budget of {budget} exhausted after {accepted} acceptances")]
    ProposalBudget { budget: u64, accepted: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by invalid or unsupported input, as opposed to
    /// numerical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::UnsupportedParameters(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
