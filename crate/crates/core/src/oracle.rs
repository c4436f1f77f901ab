//! Euler–Maruyama discretization of `(S, V)`, used only to validate the
//! exact scheme. Nothing here depends on the Bessel or transition-law code.

use std::time::Instant;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::dist::BridgeState;
use crate::error::{Error, Result};
use crate::model::{CallContract, ModelParams};
use crate::rng::{stream, PathRng};
use crate::stats::summarize;
use crate::types::{Method, PathSample, PricingResult};

/// Relative acceptance window `|X_end − x_u| ≤ w·x_u` of the bridge oracle.
pub const DEFAULT_WINDOW: f64 = 0.02;
/// Fewest accepted paths the bridge oracle will return.
pub const MIN_ACCEPTED: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerConfig {
    pub n_steps: usize,
    pub n_paths: usize,
    pub seed: u64,
}

impl EulerConfig {
    pub fn validate(self) -> Result<Self> {
        if self.n_steps < 1 {
            return Err(Error::param("steps", "must be >= 1"));
        }
        if self.n_paths < 2 {
            return Err(Error::param("paths", format!("must be >= 2, got {}", self.n_paths)));
        }
        Ok(self)
    }
}

fn normal(rng: &mut PathRng) -> f64 {
    rng.sample(StandardNormal)
}

/// One full-truncation path. `x_terminal` is `1/V_T`, infinite if `V_T ≤ 0`.
fn euler_path(params: &ModelParams, maturity: f64, n_steps: usize, rng: &mut PathRng) -> PathSample {
    let dt = maturity / n_steps as f64;
    let sdt = dt.sqrt();
    let rho = params.rho;
    let rho_bar = (1.0 - rho * rho).max(0.0).sqrt();
    let mut v = params.v0;
    let mut log_s = params.s0.ln();
    let mut int_v = 0.0;
    let mut int_dw = 0.0;
    for _ in 0..n_steps {
        let vp = v.max(0.0);
        let sq = vp.sqrt();
        let dw1 = sdt * normal(rng);
        let dw2 = sdt * normal(rng);
        log_s += (params.r - 0.5 * vp) * dt + sq * (rho * dw1 + rho_bar * dw2);
        int_dw += sq * dw1;
        v += params.kappa * vp * (params.theta - vp) * dt + params.epsilon * vp * sq * dw1;
        int_v += 0.5 * (vp + v.max(0.0)) * dt;
    }
    PathSample {
        x_terminal: 1.0 / v.max(0.0),
        int_inv_x: int_v,
        int_sqrt_inv_dw: int_dw,
        log_s_terminal: log_s,
    }
}

/// Path `i` uses stream `(seed, i)`.
pub fn euler_paths(params: &ModelParams, maturity: f64, cfg: &EulerConfig) -> Result<Vec<PathSample>> {
    let params = params.validate()?;
    let cfg = cfg.validate()?;
    if !(maturity.is_finite() && maturity > 0.0) {
        return Err(Error::param("maturity", format!("must be > 0, got {maturity}")));
    }
    Ok((0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|i| euler_path(&params, maturity, cfg.n_steps, &mut stream(cfg.seed, i)))
        .collect())
}

pub fn price_call_euler(
    params: &ModelParams,
    contract: &CallContract,
    cfg: &EulerConfig,
) -> Result<PricingResult> {
    let contract = contract.validate()?;
    let start = Instant::now();
    let discount = (-params.r * contract.maturity).exp();
    let payoffs: Vec<f64> = euler_paths(params, contract.maturity, cfg)?
        .iter()
        .map(|p| discount * (p.log_s_terminal.exp() - contract.strike).max(0.0))
        .collect();
    let (estimate, std_error) = summarize(&payoffs)?;
    Ok(PricingResult {
        estimate,
        std_error,
        n_trials: payoffs.len(),
        method: Method::Euler,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Euler path of `X` from `x_t`; `None` if it leaves `(0, ∞)`.
fn x_path(params: &ModelParams, bridge: &BridgeState, n_steps: usize, rng: &mut PathRng) -> Option<(f64, f64)> {
    let h = bridge.dt / n_steps as f64;
    let sh = h.sqrt();
    let a = params.kappa + params.epsilon * params.epsilon;
    let b = params.kappa * params.theta;
    let mut x = bridge.x_t;
    let mut integral = 0.0;
    for _ in 0..n_steps {
        let next = x + (a - b * x) * h - params.epsilon * x.sqrt() * sh * normal(rng);
        if next.is_nan() || next <= 0.0 {
            return None;
        }
        integral += 0.5 * (1.0 / x + 1.0 / next) * h;
        x = next;
    }
    Some((x, integral))
}

/// `∫ds/X_s` over Euler paths of `X` started at `x_t` whose endpoint lands
/// within relative distance [`DEFAULT_WINDOW`] of `x_u`.
pub fn euler_bridge_samples(
    params: &ModelParams,
    bridge: BridgeState,
    cfg: &EulerConfig,
) -> Result<Vec<f64>> {
    euler_bridge_samples_windowed(params, bridge, cfg, DEFAULT_WINDOW)
}

pub fn euler_bridge_samples_windowed(
    params: &ModelParams,
    bridge: BridgeState,
    cfg: &EulerConfig,
    window: f64,
) -> Result<Vec<f64>> {
    let params = params.validate()?;
    let cfg = cfg.validate()?;
    if !(window > 0.0 && window.is_finite()) {
        return Err(Error::param("window", format!("must be > 0, got {window}")));
    }
    let accepted: Vec<f64> = (0..cfg.n_paths as u64)
        .into_par_iter()
        .filter_map(|i| {
            let (x_end, integral) = x_path(&params, &bridge, cfg.n_steps, &mut stream(cfg.seed, i))?;
            ((x_end - bridge.x_u).abs() <= window * bridge.x_u).then_some(integral)
        })
        .collect();
    if accepted.len() < MIN_ACCEPTED {
        return Err(Error::TooFewAccepted {
            accepted: accepted.len(),
            required: MIN_ACCEPTED,
        });
    }
    Ok(accepted)
}
