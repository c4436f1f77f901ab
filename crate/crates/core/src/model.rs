//! Model parameters, validation and the `V ↔ X = 1/V` change of variables.

use crate::error::{Error, Result};

/// Coefficients and initial state of the 3/2 model.
///
/// Under the risk-neutral measure
///
/// ```text
/// dS/S = r dt + √V (ρ dW¹ + √(1−ρ²) dW²)
/// dV   = κV(θ − V) dt + ε V^{3/2} dW¹
/// ```
///
/// and `X = 1/V` solves `dX = (κ + ε² − κθX)dt − ε√X dW¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub kappa: f64,
    pub theta: f64,
    pub epsilon: f64,
    pub rho: f64,
    pub r: f64,
    pub s0: f64,
    pub v0: f64,
}

impl ModelParams {
    /// The standard parameter set for the reference call price
    /// (`S₀ = 1, κ = 2, θ = 1.5, ε = 0.2, ρ = −0.5, r = 0.05`).
    ///
    /// The initial variance is not part of that set. `V₀ = 1` is the value
    /// consistent with the reference price 0.443059 (`V₀ = θ`
    /// prices near 0.470).
    pub fn reference() -> Self {
        ModelParams {
            kappa: 2.0,
            theta: 1.5,
            epsilon: 0.2,
            rho: -0.5,
            r: 0.05,
            s0: 1.0,
            v0: 1.0,
        }
    }

    /// Returns the parameters unchanged if every invariant holds.
    pub fn validate(self) -> Result<Self> {
        fn positive(name: &'static str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::param(name, format!("must be finite and > 0, got {v}")))
            }
        }
        positive("kappa", self.kappa)?;
        positive("theta", self.theta)?;
        positive("epsilon", self.epsilon)?;
        positive("s0", self.s0)?;
        positive("v0", self.v0)?;
        if !(self.rho.is_finite() && (-1.0..=1.0).contains(&self.rho)) {
            return Err(Error::param(
                "rho",
                format!("must lie in [-1, 1], got {}", self.rho),
            ));
        }
        if !self.r.is_finite() {
            return Err(Error::param("r", "must be finite"));
        }
        Ok(self)
    }

    /// Degrees of freedom of the noncentral χ² transition law, `4(κ+ε²)/ε²`.
    /// Always greater than 4, so `X` never reaches zero.
    #[inline]
    pub fn delta(&self) -> f64 {
        4.0 * (self.kappa + self.epsilon * self.epsilon) / (self.epsilon * self.epsilon)
    }

    /// Dimension of the associated squared Bessel process; equal to [`Self::delta`].
    #[inline]
    pub fn n(&self) -> f64 {
        self.delta()
    }

    /// Bessel index `n/2 − 1`.
    #[inline]
    pub fn nu(&self) -> f64 {
        self.delta() / 2.0 - 1.0
    }

    /// Drift coefficient of the time-changed process, `−2κθ/ε²` (negative).
    #[inline]
    pub fn j(&self) -> f64 {
        -2.0 * self.kappa * self.theta / (self.epsilon * self.epsilon)
    }

    /// Initial state of the reciprocal process, `1/V₀`.
    #[inline]
    pub fn x0(&self) -> f64 {
        1.0 / self.v0
    }

    /// Mean-reversion speed of `X`, `κθ`.
    #[inline]
    pub fn x_speed(&self) -> f64 {
        self.kappa * self.theta
    }
}

/// A European call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CallContract {
    pub strike: f64,
    pub maturity: f64,
}

impl CallContract {
    pub fn new(strike: f64, maturity: f64) -> Result<Self> {
        CallContract { strike, maturity }.validate()
    }

    pub fn validate(self) -> Result<Self> {
        if !(self.strike.is_finite() && self.strike > 0.0) {
            return Err(Error::param("strike", format!("must be > 0, got {}", self.strike)));
        }
        if !(self.maturity.is_finite() && self.maturity > 0.0) {
            return Err(Error::param(
                "maturity",
                format!("must be > 0, got {}", self.maturity),
            ));
        }
        Ok(self)
    }
}

pub fn x_from_v(v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(1.0 / v)
    } else {
        Err(Error::param("v", format!("must be > 0, got {v}")))
    }
}

pub fn v_from_x(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(1.0 / x)
    } else {
        Err(Error::param("x", format!("must be > 0, got {x}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_set_is_valid() {
        let p = ModelParams::reference().validate().unwrap();
        approx::assert_relative_eq!(p.delta(), 204.0, max_relative = 1e-14);
        approx::assert_relative_eq!(p.nu(), 101.0, max_relative = 1e-14);
        approx::assert_relative_eq!(p.j(), -150.0, max_relative = 1e-14);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        let mut p = ModelParams::reference();
        p.epsilon = 0.0;
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParameter { name: "epsilon", .. })
        ));
        let mut p = ModelParams::reference();
        p.rho = 1.5;
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParameter { name: "rho", .. })
        ));
        let mut p = ModelParams::reference();
        p.v0 = -1.0;
        assert!(p.validate().is_err());
        assert!(CallContract::new(0.0, 1.0).is_err());
        assert!(CallContract::new(1.0, 0.0).is_err());
    }

    #[test]
    fn perfect_correlation_is_accepted() {
        for rho in [-1.0, 1.0] {
            let mut p = ModelParams::reference();
            p.rho = rho;
            assert!(p.validate().is_ok());
        }
    }

    #[test]
    fn reciprocal_map() {
        assert_eq!(x_from_v(1.0).unwrap(), 1.0);
        assert_eq!(x_from_v(0.25).unwrap(), 4.0);
        assert!(x_from_v(0.0).is_err());
        assert!(v_from_x(-2.0).is_err());
    }

    proptest! {
        #[test]
        fn reciprocal_round_trip(x in 1e-6f64..1e6) {
            let back = x_from_v(v_from_x(x).unwrap()).unwrap();
            prop_assert!((back - x).abs() <= 2.0 * f64::EPSILON * x);
        }

        #[test]
        fn derived_constants(
            kappa in 1e-3f64..20.0,
            theta in 1e-3f64..5.0,
            epsilon in 1e-2f64..3.0,
            rho in -1.0f64..=1.0,
        ) {
            let p = ModelParams { kappa, theta, epsilon, rho, r: 0.0, s0: 1.0, v0: 1.0 }
                .validate()
                .unwrap();
            prop_assert!(p.delta() > 4.0);
            prop_assert!(p.nu() > 1.0);
            prop_assert!(p.j() < 0.0);
            prop_assert_eq!(p.nu().to_bits(), (p.delta() / 2.0 - 1.0).to_bits());
            prop_assert_eq!(p.n().to_bits(), p.delta().to_bits());
        }
    }
}
