use std::time::Instant;

use rayon::prelude::*;

use super::{black_scholes_call, step_exact, step_integrals, SimSettings};
use crate::dist::{BridgeState, TransitionLaw};
use crate::error::{Error, Result};
use crate::model::{CallContract, ModelParams};
use crate::qmc::{owen_scramble, sobol_net, DigitalNet2D};
use crate::rng::{open01, stream};
use crate::stats::{compensated_sum, summarize};
use crate::types::{Method, PricingResult};

/// Plain Monte Carlo with one exact step to maturity per path. Path `i` uses
/// stream `(seed, i)`, so the estimate does not depend on the thread count.
pub fn price_call_exact(
    params: &ModelParams,
    contract: &CallContract,
    n_paths: usize,
    seed: u64,
    settings: &SimSettings,
) -> Result<PricingResult> {
    let params = params.validate()?;
    let contract = contract.validate()?;
    let start = Instant::now();
    let discount = (-params.r * contract.maturity).exp();
    let payoffs: Vec<f64> = (0..n_paths as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i);
            let step = step_exact(
                &params,
                settings,
                params.s0,
                params.x0(),
                contract.maturity,
                &mut rng,
            )?;
            Ok(discount * (step.log_s_terminal.exp() - contract.strike).max(0.0))
        })
        .collect::<Result<_>>()?;
    let (estimate, std_error) = summarize(&payoffs)?;
    Ok(PricingResult {
        estimate,
        std_error,
        n_trials: n_paths,
        method: Method::ExactMc,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// A finite sequence of points in `(0, 1)²`; coordinate 0 drives `X_T`,
/// coordinate 1 drives `∫ds/X_s`.
pub trait PointSource: Sync {
    fn len(&self) -> usize;
    fn point(&self, i: usize) -> [f64; 2];

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Independent uniforms: point `i` is two draws from stream `(seed, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PseudoRandomPoints {
    pub n: usize,
    pub seed: u64,
}

impl PointSource for PseudoRandomPoints {
    fn len(&self) -> usize {
        self.n
    }

    fn point(&self, i: usize) -> [f64; 2] {
        let mut rng = stream(self.seed, i as u64);
        [open01(&mut rng), open01(&mut rng)]
    }
}

impl PointSource for DigitalNet2D {
    fn len(&self) -> usize {
        DigitalNet2D::len(self)
    }

    fn point(&self, i: usize) -> [f64; 2] {
        self.point_offset(i)
    }
}

/// Discounted call value conditional on the variance path, as a function of
/// the two uniforms that determine it.
///
/// Given `I = ∫V ds` and `J = ∫√V dW¹`, `log S_T` is normal, so the
/// conditional price is Black–Scholes with spot `S₀ exp(−ρ²I/2 + ρJ)` and
/// volatility `√((1−ρ²) I / T)`.
pub fn cond_mc_value(
    params: &ModelParams,
    contract: &CallContract,
    settings: &SimSettings,
    u: [f64; 2],
) -> Result<f64> {
    let t = contract.maturity;
    let x0 = params.x0();
    let x_t = TransitionLaw::new(params, x0, t)?.quantile(u[0]);
    let bridge = BridgeState::new(x0, x_t, t)?;
    let (int_v, int_dw) = step_integrals(params, settings, bridge, u[1])?;
    let rho = params.rho;
    let spot = params.s0 * (-0.5 * rho * rho * int_v + rho * int_dw).exp();
    let sigma = ((1.0 - rho * rho).max(0.0) * int_v / t).sqrt();
    black_scholes_call(spot, contract.strike, params.r, t, sigma)
}

fn cond_values(
    params: &ModelParams,
    contract: &CallContract,
    points: &dyn PointSource,
    settings: &SimSettings,
) -> Result<Vec<f64>> {
    (0..points.len())
        .into_par_iter()
        .map(|i| cond_mc_value(params, contract, settings, points.point(i)))
        .collect()
}

/// Conditional Monte Carlo over an arbitrary point set. The standard error
/// treats the points as independent, which is only meaningful for
/// [`PseudoRandomPoints`].
pub fn price_call_cond_mc(
    params: &ModelParams,
    contract: &CallContract,
    points: &dyn PointSource,
    settings: &SimSettings,
) -> Result<PricingResult> {
    let params = params.validate()?;
    let contract = contract.validate()?;
    let start = Instant::now();
    let values = cond_values(&params, &contract, points, settings)?;
    let (estimate, std_error) = summarize(&values)?;
    Ok(PricingResult {
        estimate,
        std_error,
        n_trials: values.len(),
        method: Method::CondMc,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Randomized QMC: `n_reps` independent Owen scrambles of the `2^m`-point
/// Sobol net. The estimate is the mean of the replicate means and its
/// standard error comes from their spread.
pub fn price_call_qmc(
    params: &ModelParams,
    contract: &CallContract,
    m: u32,
    n_reps: usize,
    seed: u64,
    settings: &SimSettings,
) -> Result<PricingResult> {
    if !(4..=20).contains(&m) {
        return Err(Error::param("m", format!("must lie in 4..=20, got {m}")));
    }
    if n_reps < 2 {
        return Err(Error::param("reps", format!("must be >= 2, got {n_reps}")));
    }
    let params = params.validate()?;
    let contract = contract.validate()?;
    let start = Instant::now();
    let base = sobol_net(m)?;
    let mut rep_means = Vec::with_capacity(n_reps);
    for rep in 0..n_reps as u64 {
        let net = owen_scramble(&base, seed, rep);
        let values = cond_values(&params, &contract, &net, settings)?;
        rep_means.push(compensated_sum(values.iter().copied()) / values.len() as f64);
    }
    let (estimate, std_error) = summarize(&rep_means)?;
    Ok(PricingResult {
        estimate,
        std_error,
        n_trials: n_reps << m,
        method: Method::QmcCondMc,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contract() -> CallContract {
        CallContract::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn perfect_correlation_removes_the_black_scholes_volatility() {
        let p = ModelParams { rho: 1.0, ..ModelParams::reference() };
        let s = SimSettings::default();
        let v = cond_mc_value(&p, &contract(), &s, [0.3, 0.6]).unwrap();
        let x_t = TransitionLaw::new(&p, p.x0(), 1.0).unwrap().quantile(0.3);
        let (i, j) =
            step_integrals(&p, &s, BridgeState::new(p.x0(), x_t, 1.0).unwrap(), 0.6).unwrap();
        let spot = (-0.5 * i + j).exp();
        assert_eq!(v, (spot - (-0.05f64).exp()).max(0.0));
    }

    #[test]
    fn vanishing_strike_recovers_spot() {
        let p = ModelParams::reference();
        let c = CallContract::new(1e-12, 1.0).unwrap();
        let res = price_call_exact(&p, &c, 4000, 5, &SimSettings::default()).unwrap();
        assert!((res.estimate - 1.0).abs() < 4.0 * res.std_error + 1e-9, "{res:?}");
    }

    #[test]
    fn conditioning_reduces_variance() {
        let p = ModelParams::reference();
        let s = SimSettings::default();
        let exact = price_call_exact(&p, &contract(), 2000, 1, &s).unwrap();
        let pts = PseudoRandomPoints { n: 2000, seed: 1 };
        let cond = price_call_cond_mc(&p, &contract(), &pts, &s).unwrap();
        assert!(cond.std_error < exact.std_error, "{cond:?} vs {exact:?}");
        assert!(exact.discrepancy(&cond) < 4.0);
    }

    #[test]
    fn results_do_not_depend_on_thread_count() {
        let p = ModelParams::reference();
        let s = SimSettings::default();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    (
                        price_call_exact(&p, &contract(), 300, 9, &s).unwrap(),
                        price_call_qmc(&p, &contract(), 4, 3, 9, &s).unwrap(),
                    )
                })
        };
        let (a1, q1) = run(1);
        let (a4, q4) = run(4);
        assert_eq!((a1.estimate, a1.std_error), (a4.estimate, a4.std_error));
        assert_eq!((q1.estimate, q1.std_error), (q4.estimate, q4.std_error));
    }

    #[test]
    fn qmc_argument_checks() {
        let p = ModelParams::reference();
        let s = SimSettings::default();
        assert!(price_call_qmc(&p, &contract(), 3, 4, 0, &s).is_err());
        assert!(price_call_qmc(&p, &contract(), 21, 4, 0, &s).is_err());
        assert!(price_call_qmc(&p, &contract(), 4, 1, 0, &s).is_err());
        let r = price_call_qmc(&p, &contract(), 4, 2, 0, &s).unwrap();
        assert_eq!(r.n_trials, 32);
        assert_eq!(r.method, Method::QmcCondMc);
    }

    #[test]
    fn discounted_price_is_a_martingale() {
        // E[e^{−rT} S_T] = S₀, checked through the K → 0 conditional value.
        let p = ModelParams::reference();
        let c = CallContract::new(1e-12, 1.0).unwrap();
        let r = price_call_qmc(&p, &c, 6, 8, 3, &SimSettings::default()).unwrap();
        assert!((r.estimate - 1.0).abs() < 4.0 * r.std_error + 1e-6, "{r:?}");
    }
}
