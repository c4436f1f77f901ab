use statrs::function::erf::erfc;

use crate::error::{Error, Result};

fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Black–Scholes value of a European call. At `sigma = 0` this is the
/// discounted-forward intrinsic value `max(s0 − K e^{−rτ}, 0)`.
pub fn black_scholes_call(s0: f64, strike: f64, r: f64, tau: f64, sigma: f64) -> Result<f64> {
    for (name, v) in [("s0", s0), ("strike", strike), ("tau", tau)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::param(name, format!("must be > 0, got {v}")));
        }
    }
    if sigma.is_nan() || sigma < 0.0 {
        return Err(Error::param("sigma", format!("must be >= 0, got {sigma}")));
    }
    let discounted_strike = strike * (-r * tau).exp();
    if sigma == 0.0 {
        return Ok((s0 - discounted_strike).max(0.0));
    }
    if sigma.is_infinite() {
        return Ok(s0);
    }
    let vol = sigma * tau.sqrt();
    let d1 = ((s0 / discounted_strike).ln()) / vol + 0.5 * vol;
    let d2 = d1 - vol;
    Ok(s0 * norm_cdf(d1) - discounted_strike * norm_cdf(d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_volatility_is_forward_intrinsic() {
        let v = black_scholes_call(1.0, 1.0, 0.05, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(v, 1.0 - (-0.05f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(v, 0.048_771, epsilon = 1e-6);
    }

    #[test]
    fn textbook_value() {
        // S = 100, K = 100, r = 5%, τ = 1, σ = 20%
        let v = black_scholes_call(100.0, 100.0, 0.05, 1.0, 0.2).unwrap();
        assert_abs_diff_eq!(v, 10.450_583_572_185_565, epsilon = 1e-9);
    }

    #[test]
    fn large_volatility_tends_to_spot() {
        let v = black_scholes_call(1.0, 1.0, 0.05, 1.0, 50.0).unwrap();
        assert!((1.0 - v) < 1e-9);
        assert_eq!(black_scholes_call(1.0, 1.0, 0.05, 1.0, f64::INFINITY).unwrap(), 1.0);
    }

    #[test]
    fn increasing_in_volatility() {
        let mut prev = 0.0;
        for i in 0..100 {
            let v = black_scholes_call(1.0, 1.2, 0.05, 1.0, 0.02 * i as f64).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn domain_errors() {
        assert!(black_scholes_call(0.0, 1.0, 0.0, 1.0, 0.2).is_err());
        assert!(black_scholes_call(1.0, -1.0, 0.0, 1.0, 0.2).is_err());
        assert!(black_scholes_call(1.0, 1.0, 0.0, 0.0, 0.2).is_err());
        assert!(black_scholes_call(1.0, 1.0, 0.0, 1.0, -0.2).is_err());
    }
}
