//! The exact path step and the call-price estimators built on it.

mod black_scholes;
mod pricing;
mod step;

pub use black_scholes::black_scholes_call;
pub use pricing::{
    cond_mc_value, price_call_cond_mc, price_call_exact, price_call_qmc, PointSource,
    PseudoRandomPoints,
};
pub use step::{recover_brownian_integral, step_exact, step_integrals};

pub use crate::stats::summarize;

use crate::dist::{InversionMode, DEFAULT_TOL};

/// Tuning of the conditional integrated-variance sampler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSettings {
    /// Error target for the trapezoidal CDF.
    pub tol: f64,
    pub inversion: InversionMode,
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings {
            tol: DEFAULT_TOL,
            inversion: InversionMode::Interpolate,
        }
    }
}
