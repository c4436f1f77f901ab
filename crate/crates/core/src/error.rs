use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("log-gamma pole at z = {0}")]
    GammaPole(f64),

    #[error("Bessel series did not converge within {terms} terms (order {order_re}{order_im:+}i, z = {z})")]
    SeriesNonConvergence {
        order_re: f64,
        order_im: f64,
        z: f64,
        terms: usize,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("conditional variance estimate is not positive (second moment {second}, mean {mean})")]
    MomentFailure { mean: f64, second: f64 },

    #[error("characteristic-function sum did not terminate within {0} terms")]
    TermLimit(usize),

    #[error("bridge oracle accepted only {accepted} paths (need at least {required})")]
    TooFewAccepted { accepted: usize, required: usize },

    #[error("need at least {required} samples, got {got}")]
    TooFewSamples { required: usize, got: usize },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
