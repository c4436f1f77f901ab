use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ensure_finite, ln_1p};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Principal branch of `log Γ(z)`.
///
/// Lanczos approximation (g = 7, nine coefficients) on `Re z ≥ 1/2` and the
/// reflection formula below it. For real `z > 0` the imaginary part is
/// exactly zero.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("log_gamma_complex argument"));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::GammaPole(z.re));
    }
    let value = if z.re < 0.5 {
        // log Γ(z) = log π − log sin(πz) − log Γ(1 − z)
        Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - lanczos(Complex64::new(1.0, 0.0) - z)
    } else {
        lanczos(z)
    };
    let value = if z.im == 0.0 && z.re > 0.0 {
        Complex64::new(value.re, 0.0)
    } else {
        value
    };
    ensure_finite(value, "log_gamma_complex")
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + HALF_LN_2PI + acc.ln()
}

/// `ln sin(πz)` modulo 2πi, without overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin w = (i/2)·e^{−iw}·(1 − e^{2iw}), with |e^{2iw}| ≤ 1 for Im w ≥ 0.
    let w = z * PI;
    let i = Complex64::i();
    -i * w + ln_1p(-(i * w * 2.0).exp()) + Complex64::new(0.5f64.ln(), PI / 2.0)
}

const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

fn stirling_tail(y: Complex64) -> Complex64 {
    let inv = y.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in &STIRLING {
        acc += p * c;
        p *= inv2;
    }
    acc
}

/// `log Γ(x + d) − log Γ(x)` without the cancellation of subtracting two
/// large log-gamma values. Requires `Re x > 0` and `Re(x + d) > 0`.
pub(crate) fn log_gamma_diff(x: Complex64, d: Complex64) -> Complex64 {
    const SHIFT_TO: f64 = 20.0;
    let lowest = x.re.min(x.re + d.re);
    let shift = if lowest < SHIFT_TO {
        (SHIFT_TO - lowest).ceil() as usize
    } else {
        0
    };
    let mut recurrence = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        recurrence += ln_1p(d / (x + k as f64));
    }
    let big = x + shift as f64;
    let moved = big + d;
    let head = (big - 0.5) * ln_1p(d / big) + d * moved.ln() - d;
    head + stirling_tail(moved) - stirling_tail(big) - recurrence
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent route: Stirling series at z + 40, pulled back by the
    /// recurrence Γ(z+1) = zΓ(z) with principal logs.
    fn oracle(z: Complex64) -> Complex64 {
        let shift = 40;
        let y = z + shift as f64;
        let mut v = (y - 0.5) * y.ln() - y + HALF_LN_2PI + stirling_tail(y);
        for k in 0..shift {
            v -= (z + k as f64).ln();
        }
        v
    }

    #[test]
    fn trivial_values() {
        assert_abs_diff_eq!(log_gamma_complex(c(1.0, 0.0)).unwrap().re, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            log_gamma_complex(c(5.0, 0.0)).unwrap().re,
            24f64.ln(),
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            log_gamma_complex(c(0.5, 0.0)).unwrap().re,
            0.5 * PI.ln(),
            epsilon = 1e-14
        );
        assert_eq!(log_gamma_complex(c(3.3, 0.0)).unwrap().im, 0.0);
    }

    #[test]
    fn one_plus_i_matches_recurrence_oracle() {
        let got = log_gamma_complex(c(1.0, 1.0)).unwrap();
        let want = oracle(c(1.0, 1.0));
        // Frozen from the oracle: -0.6509231993018563 - 0.3016403204675331i
        assert_abs_diff_eq!(want.re, -0.650_923_199_301_856_3, epsilon = 1e-12);
        assert_abs_diff_eq!(want.im, -0.301_640_320_467_533_1, epsilon = 1e-12);
        assert_abs_diff_eq!(got.re, want.re, epsilon = 1e-12);
        assert_abs_diff_eq!(got.im, want.im, epsilon = 1e-12);
    }

    #[test]
    fn agrees_with_oracle_on_right_half_plane() {
        for &(re, im) in &[(0.7, 3.0), (2.5, -7.0), (30.0, 12.0), (102.0, -77.0), (1.2, 40.0)] {
            let z = c(re, im);
            let got = log_gamma_complex(z).unwrap();
            let want = oracle(z);
            let tol = 1e-13 * want.norm().max(1.0);
            assert_abs_diff_eq!(got.re, want.re, epsilon = tol);
            assert_abs_diff_eq!(got.im, want.im, epsilon = tol);
        }
    }

    #[test]
    fn poles_are_errors() {
        for z in [0.0, -1.0, -7.0] {
            assert_eq!(log_gamma_complex(c(z, 0.0)), Err(Error::GammaPole(z)));
        }
        assert!(log_gamma_complex(c(-1.0, 1e-3)).is_ok());
    }

    #[test]
    fn reflection_identity() {
        for &(re, im) in &[(0.3, 0.2), (-2.4, 1.7), (0.25, -5.0), (-0.5, 0.0), (1.7, 30.0)] {
            let z = c(re, im);
            let lhs = log_gamma_complex(z).unwrap() + log_gamma_complex(c(1.0, 0.0) - z).unwrap();
            let rhs = Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z);
            let d = lhs - rhs;
            assert_abs_diff_eq!(d.re, 0.0, epsilon = 1e-10);
            let turns = d.im / (2.0 * PI);
            assert_abs_diff_eq!(turns, turns.round(), epsilon = 1e-10);
        }
    }

    #[test]
    fn gamma_diff_matches_direct_difference() {
        for &(x, d) in &[
            (c(102.0, 0.0), c(1e-3, 0.0)),
            (c(102.0, 0.0), c(20.0, -40.0)),
            (c(2.0, 0.0), c(0.5, 3.0)),
            (c(27.0, 0.0), c(1e-7, -1e-5)),
        ] {
            let got = log_gamma_diff(x, d);
            let want = oracle(x + d) - oracle(x);
            let tol = 1e-12 * want.norm().max(1.0);
            assert_abs_diff_eq!(got.re, want.re, epsilon = tol);
            assert_abs_diff_eq!(got.im, want.im, epsilon = tol);
        }
    }
}
