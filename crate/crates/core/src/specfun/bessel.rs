use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ensure_finite, log_gamma_complex, log_gamma_diff};
use crate::error::{Error, Result};

/// Arguments above this use the large-argument expansion, provided the order
/// is small enough for that expansion to be accurate (`|ν|² ≤ 4z`).
pub const Z_SWITCH: f64 = 400.0;

/// Term cap for the ascending series.
pub const MAX_SERIES_TERMS: usize = 10_000;

const SERIES_STOP: f64 = 1e-17;
const RESCALE: f64 = 1e250;
const MAX_ASYMPTOTIC_TERMS: usize = 4_000;

/// `exp(log_magnitude) · (cos phase + i sin phase)` with `phase ∈ (−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaledValue {
    pub log_magnitude: f64,
    pub phase: f64,
}

impl LogScaledValue {
    /// Wraps a complex logarithm, normalizing its imaginary part.
    pub fn from_log(log: Complex64) -> Self {
        LogScaledValue {
            log_magnitude: log.re,
            phase: normalize_phase(log.im),
        }
    }

    pub fn to_log(self) -> Complex64 {
        Complex64::new(self.log_magnitude, self.phase)
    }

    /// The represented value; overflows to infinity for `log_magnitude > ~709`.
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.log_magnitude.exp(), self.phase)
    }

    pub fn conj(self) -> Self {
        LogScaledValue::from_log(self.to_log().conj())
    }

    /// `self / other` as an ordinary complex number.
    pub fn ratio(self, other: LogScaledValue) -> Complex64 {
        Complex64::from_polar(
            (self.log_magnitude - other.log_magnitude).exp(),
            normalize_phase(self.phase - other.phase),
        )
    }
}

fn normalize_phase(p: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let t = (p + PI).rem_euclid(two_pi) - PI;
    if t <= -PI {
        t + two_pi
    } else {
        t
    }
}

fn check_args(nu: Complex64, z: f64) -> Result<()> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::param("z", format!("must be finite and > 0, got {z}")));
    }
    if !(nu.re.is_finite() && nu.im.is_finite()) {
        return Err(Error::NonFinite("Bessel order"));
    }
    if nu.re <= -1.0 {
        return Err(Error::param(
            "nu",
            format!("real part must exceed -1, got {}", nu.re),
        ));
    }
    Ok(())
}

fn use_asymptotic(order_norm: f64, z: f64) -> bool {
    z > Z_SWITCH && order_norm * order_norm <= 4.0 * z
}

/// Log-scaled `I_ν(z)` for complex order `ν` (`Re ν > −1`) and real `z > 0`.
pub fn bessel_i_log(nu: Complex64, z: f64) -> Result<LogScaledValue> {
    check_args(nu, z)?;
    if use_asymptotic(nu.norm(), z) {
        bessel_i_log_asymptotic(nu, z)
    } else {
        bessel_i_log_series(nu, z)
    }
}

/// Ascending series `Σ (z/2)^{ν+2k} / (k! Γ(ν+k+1))`, regardless of `z`.
pub fn bessel_i_log_series(nu: Complex64, z: f64) -> Result<LogScaledValue> {
    check_args(nu, z)?;
    let prefactor = nu * (0.5 * z).ln() - log_gamma_complex(nu + 1.0)?;
    let sum = log_series_sum(nu, z)?;
    Ok(LogScaledValue::from_log(ensure_finite(
        prefactor + sum,
        "Bessel series",
    )?))
}

/// Large-argument expansion
/// `e^z/√(2πz) · Σ (−1)^k a_k(ν)/z^k`, truncated at its smallest term.
pub fn bessel_i_log_asymptotic(nu: Complex64, z: f64) -> Result<LogScaledValue> {
    check_args(nu, z)?;
    let sum = log_hankel_sum(nu, z);
    Ok(LogScaledValue::from_log(ensure_finite(
        sum + z - 0.5 * (2.0 * PI * z).ln(),
        "Bessel asymptotic expansion",
    )?))
}

/// `ln Σ_k (z²/4)^k / (k! (ν+1)_k)`, with running rescaling so that
/// intermediate terms never overflow.
fn log_series_sum(nu: Complex64, z: f64) -> Result<Complex64> {
    let q = 0.25 * z * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut log_scale = 0.0;
    for k in 1..=MAX_SERIES_TERMS {
        let kf = k as f64;
        let factor = q / ((nu + kf) * kf);
        term *= factor;
        sum += term;
        let term_norm = term.norm();
        if term_norm > RESCALE {
            term /= RESCALE;
            sum /= RESCALE;
            log_scale += RESCALE.ln();
        } else if factor.norm() < 1.0 && term_norm < SERIES_STOP * sum.norm() {
            return Ok(sum.ln() + log_scale);
        }
    }
    Err(Error::SeriesNonConvergence {
        order_re: nu.re,
        order_im: nu.im,
        z,
        terms: MAX_SERIES_TERMS,
    })
}

/// `ln Σ_k (−1)^k a_k(ν) / z^k`.
fn log_hankel_sum(nu: Complex64, z: f64) -> Complex64 {
    let mu4 = nu * nu * 4.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = f64::INFINITY;
    for k in 1..=MAX_ASYMPTOTIC_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu4 - odd * odd) / (8.0 * k as f64 * z);
        let n = next.norm();
        if n >= last {
            break;
        }
        sum += next;
        term = next;
        last = n;
        if n == 0.0 || n < SERIES_STOP * sum.norm() {
            break;
        }
    }
    sum.ln()
}

/// `I_μ(z) / I_ν(z)` for complex `μ`, real `ν ≥ 1` and `z > 0`.
pub fn bessel_i_ratio(mu: Complex64, nu: f64, z: f64) -> Result<Complex64> {
    if mu == Complex64::new(nu, 0.0) {
        check_args(mu, z)?;
        return Ok(Complex64::new(1.0, 0.0));
    }
    BesselRatio::new(nu, z)?.ratio_offset(mu - nu)
}

/// Ratios `I_{ν+d}(z)/I_ν(z)` sharing one denominator.
///
/// Both numerator and denominator go through the same branch (chosen from
/// the larger order), so the common prefactor cancels analytically. On the
/// series branch the gamma-function part of the prefactor is evaluated as a
/// difference `log Γ(ν+1+d) − log Γ(ν+1)`, which keeps small offsets `d`
/// accurate.
#[derive(Debug, Clone)]
pub struct BesselRatio {
    nu: f64,
    z: f64,
    log_half_z: f64,
    series_denominator: Option<Complex64>,
    hankel_denominator: Option<Complex64>,
}

impl BesselRatio {
    pub fn new(nu: f64, z: f64) -> Result<Self> {
        if !(nu.is_finite() && nu >= 1.0) {
            return Err(Error::param("nu", format!("must be >= 1, got {nu}")));
        }
        check_args(Complex64::new(nu, 0.0), z)?;
        let order = Complex64::new(nu, 0.0);
        let hankel_denominator = (z > Z_SWITCH).then(|| log_hankel_sum(order, z));
        let series_denominator = if use_asymptotic(nu, z) {
            // computed on demand if a numerator order is too large for the expansion
            None
        } else {
            Some(log_series_sum(order, z)?)
        };
        Ok(BesselRatio {
            nu,
            z,
            log_half_z: (0.5 * z).ln(),
            series_denominator,
            hankel_denominator,
        })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// `ln(I_{ν+d}(z)/I_ν(z))`.
    pub fn log_ratio_offset(&self, d: Complex64) -> Result<Complex64> {
        if d == Complex64::new(0.0, 0.0) {
            return Ok(d);
        }
        let mu = d + self.nu;
        check_args(mu, self.z)?;
        let order_norm = mu.norm().max(self.nu);
        let value = if use_asymptotic(order_norm, self.z) {
            // use_asymptotic implies z > Z_SWITCH, so the denominator exists
            let denom = self.hankel_denominator.expect("hankel denominator");
            log_hankel_sum(mu, self.z) - denom
        } else {
            let denom = match self.series_denominator {
                Some(d) => d,
                None => log_series_sum(Complex64::new(self.nu, 0.0), self.z)?,
            };
            d * self.log_half_z - log_gamma_diff(Complex64::new(self.nu + 1.0, 0.0), d)
                + log_series_sum(mu, self.z)?
                - denom
        };
        ensure_finite(value, "Bessel ratio")
    }

    pub fn ratio_offset(&self, d: Complex64) -> Result<Complex64> {
        let l = self.log_ratio_offset(d)?;
        Ok(Complex64::from_polar(l.re.exp(), l.im))
    }
}
