//! Fixed-precision decimal formatting shared by every CSV writer.

/// Significant digits written for every floating-point CSV field.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits.
///
/// Plain decimal notation is used for magnitudes in `[1e-5, 1e15)`,
/// scientific notation otherwise. Trailing fractional zeros are dropped.
/// Non-finite values print as `nan`, `inf` or `-inf`.
pub fn sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exponent) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    } else {
        let text = format!("{x:.prec$e}", prec = SIGNIFICANT_DIGITS - 1);
        let (mantissa, exp) = text.split_once('e').expect("exponent present");
        format!("{}e{exp}", trim_fraction(mantissa))
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
