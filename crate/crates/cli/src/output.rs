use threehalves::PricingResult;

pub fn pricing_header() -> &'static str {
    "method,n_trials,estimate,std_error,wall_seconds"
}

/// `x` with nine significant digits, in plain decimal when that is short.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.8e}")
    }
}

pub fn pricing_row(r: &PricingResult) -> String {
    format!(
        "{},{},{},{},{:.3}",
        r.method,
        r.n_trials,
        sig9(r.estimate),
        sig9(r.std_error),
        r.wall_seconds
    )
}
