//! Result records shared by the exact engine and the discretization oracle.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Outputs of one simulated step (or of a whole discretized path).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub x_terminal: f64,
    /// `∫ds/X_s = ∫V_s ds` over the step.
    pub int_inv_x: f64,
    /// `∫X_s^{-1/2} dW¹ = ∫√V_s dW¹` over the step.
    pub int_sqrt_inv_dw: f64,
    pub log_s_terminal: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExactMc,
    CondMc,
    QmcCondMc,
    Euler,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::ExactMc, Method::CondMc, Method::QmcCondMc, Method::Euler];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactMc => "exact-mc",
            Method::CondMc => "cond-mc",
            Method::QmcCondMc => "qmc-cond-mc",
            Method::Euler => "euler",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                Error::param(
                    "method",
                    format!("expected one of exact-mc, cond-mc, qmc-cond-mc, euler; got `{s}`"),
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PricingResult {
    pub estimate: f64,
    pub std_error: f64,
    pub n_trials: usize,
    pub method: Method,
    pub wall_seconds: f64,
}

impl PricingResult {
    /// `|Δestimate| / √(SE₁² + SE₂²)`, the two results' discrepancy in units
    /// of their combined standard error.
    pub fn discrepancy(&self, other: &PricingResult) -> f64 {
        (self.estimate - other.estimate).abs() / self.std_error.hypot(other.std_error)
    }
}
