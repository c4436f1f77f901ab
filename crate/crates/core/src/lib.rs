//! Exact Monte Carlo simulation of the 3/2 stochastic volatility model.
//!
//! The variance `V` follows `dV = κV(θ − V)dt + εV^{3/2}dW¹`, so its
//! reciprocal `X = 1/V` is a square-root diffusion with a noncentral χ²
//! transition law. A path step is simulated without discretization bias:
//!
//! 1. draw `X_u | X_t` from the scaled noncentral χ² law ([`dist::ncx2`]);
//! 2. draw `∫ds/X_s | X_t, X_u` by inverting its characteristic function, a
//!    ratio of complex-order modified Bessel functions ([`dist::cond_iv`]);
//! 3. recover `∫X_s^{-1/2}dW¹` from the log-`X` identity;
//! 4. draw `log S_u` from the resulting conditional normal law.
//!
//! [`engine`] builds plain, conditional and randomized quasi-Monte Carlo call
//! pricers on top of the stepper, and [`oracle`] provides an independent
//! Euler discretization used to validate all of the above.

pub mod dist;
pub mod engine;
mod error;
pub mod model;
pub mod oracle;
pub mod qmc;
pub mod rng;
pub mod specfun;
pub mod stats;
pub mod types;

pub use dist::{BridgeState, CondIVDistribution, InversionMode};
pub use engine::{SimSettings, black_scholes_call};
pub use error::{Error, Result};
pub use model::{CallContract, ModelParams};
pub use types::{Method, PathSample, PricingResult};
