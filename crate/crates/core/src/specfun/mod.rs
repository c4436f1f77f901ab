//! Complex-order special functions: `log Γ(z)` and the modified Bessel
//! function of the first kind `I_ν(z)` for complex `ν` and real `z > 0`.
//!
//! Bessel values are carried in log-scaled form so that ratios
//! `I_μ(z)/I_ν(z)` stay finite far beyond the range where either factor
//! alone would overflow.

mod bessel;
mod gamma;

pub use bessel::{
    bessel_i_log, bessel_i_log_asymptotic, bessel_i_log_series, bessel_i_ratio, BesselRatio,
    LogScaledValue, MAX_SERIES_TERMS, Z_SWITCH,
};
pub use gamma::log_gamma_complex;
pub(crate) use gamma::log_gamma_diff;

pub use num_complex::Complex64 as ComplexValue;

use crate::error::{Error, Result};

pub(crate) fn ensure_finite(c: ComplexValue, what: &'static str) -> Result<ComplexValue> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(c)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Principal `ln(1 + w)`, accurate for small `|w|`.
pub(crate) fn ln_1p(w: ComplexValue) -> ComplexValue {
    if w.norm_sqr() < 0.25 {
        let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
        let im = w.im.atan2(1.0 + w.re);
        ComplexValue::new(re, im)
    } else {
        (ComplexValue::new(1.0, 0.0) + w).ln()
    }
}
