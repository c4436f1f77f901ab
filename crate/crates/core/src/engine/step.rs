use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::SimSettings;
use crate::dist::{BridgeState, CondIvLaw, TransitionLaw};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::rng::open01;
use crate::types::PathSample;

/// `∫X_s^{-1/2} dW¹` from the log-`X` identity:
/// `(1/ε)(log(X_t/X_u) + (κ + ε²/2)∫ds/X_s − κθ(u − t))`.
pub fn recover_brownian_integral(
    params: &ModelParams,
    x_t: f64,
    x_u: f64,
    int_inv_x: f64,
    dt: f64,
) -> f64 {
    let eps = params.epsilon;
    ((x_t / x_u).ln() + (params.kappa + 0.5 * eps * eps) * int_inv_x - params.x_speed() * dt) / eps
}

/// Steps 2 and 3 for a known bridge: draws `∫ds/X_s` at probability level
/// `u` and recovers the Brownian integral. Returns `(∫ds/X_s, ∫X^{-1/2}dW¹)`.
pub fn step_integrals(
    params: &ModelParams,
    settings: &SimSettings,
    bridge: BridgeState,
    u: f64,
) -> Result<(f64, f64)> {
    let dist = CondIvLaw::new(params, bridge)?.build_cdf(settings.tol)?;
    let int_inv_x = dist.sample(u, settings.inversion);
    let int_dw = recover_brownian_integral(params, bridge.x_t, bridge.x_u, int_inv_x, bridge.dt);
    Ok((int_inv_x, int_dw))
}

/// One exact step of `(S, X)` over `dt`.
///
/// Consumes, in order: the normal and gamma variates of the χ² draw, one
/// uniform for the integrated-variance inversion, and one normal for
/// `log S_u`.
pub fn step_exact<R: Rng + ?Sized>(
    params: &ModelParams,
    settings: &SimSettings,
    s_t: f64,
    x_t: f64,
    dt: f64,
    rng: &mut R,
) -> Result<PathSample> {
    if !(s_t.is_finite() && s_t > 0.0) {
        return Err(Error::param("s_t", format!("must be > 0, got {s_t}")));
    }
    let x_u = TransitionLaw::new(params, x_t, dt)?.sample(rng);
    let bridge = BridgeState::new(x_t, x_u, dt)?;
    let (int_inv_x, int_dw) = step_integrals(params, settings, bridge, open01(rng))?;

    let rho = params.rho;
    let mean = s_t.ln() + params.r * dt - 0.5 * int_inv_x + rho * int_dw;
    let sd = ((1.0 - rho * rho).max(0.0) * int_inv_x).sqrt();
    let z: f64 = StandardNormal.sample(rng);
    Ok(PathSample {
        x_terminal: x_u,
        int_inv_x,
        int_sqrt_inv_dw: int_dw,
        log_s_terminal: mean + sd * z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn perfect_correlation_has_no_residual_noise() {
        for rho in [-1.0, 1.0] {
            let p = ModelParams { rho, ..ModelParams::reference() };
            let s = step_exact(&p, &SimSettings::default(), 1.0, p.x0(), 1.0, &mut stream(3, 0))
                .unwrap();
            let mean = p.r - 0.5 * s.int_inv_x + rho * s.int_sqrt_inv_dw;
            assert_eq!(s.log_s_terminal, mean);
        }
    }

    #[test]
    fn outputs_respect_invariants() {
        let p = ModelParams::reference();
        for i in 0..50 {
            let s = step_exact(&p, &SimSettings::default(), 1.0, p.x0(), 1.0, &mut stream(9, i))
                .unwrap();
            assert!(s.x_terminal > 0.0 && s.int_inv_x >= 0.0);
            assert!(s.log_s_terminal.is_finite() && s.int_sqrt_inv_dw.is_finite());
        }
    }

    #[test]
    fn multi_step_trajectory() {
        let p = ModelParams::reference();
        let mut rng = stream(11, 0);
        let (mut s, mut x) = (1.0, p.x0());
        for _ in 0..4 {
            let step = step_exact(&p, &SimSettings::default(), s, x, 0.25, &mut rng).unwrap();
            s = step.log_s_terminal.exp();
            x = step.x_terminal;
        }
        assert!(s > 0.0 && x > 0.0);
    }
}
