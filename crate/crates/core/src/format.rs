//! Printf-`%g`-style significant-digit formatting.
//!
//! Sweep CSVs and CLI output must be byte-stable across runs, so the number
//! rendering is pinned here: round to `sig` significant digits, strip
//! trailing zeros, switch to scientific notation outside `[1e-4, 10^sig)`,
//! two-digit exponent field.

/// Formats `value` with `sig` significant digits, C `%.{sig}g` semantics.
pub fn format_sig(value: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if value.is_nan() {
        return "nan".to_string();
    }
    if value.is_infinite() {
        return if value > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if value == 0.0 {
        return "0".to_string();
    }
    // Let the standard library do the rounding, then read off the decimal
    // exponent of the rounded value.
    let sci = format!("{:.*e}", sig - 1, value);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("{:e} always contains an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp >= -4 && (exp as i64) < sig as i64 {
        let decimals = sig as i32 - 1 - exp;
        let fixed = format!("{:.*}", decimals.max(0) as usize, value);
        strip_trailing_zeros(&fixed)
    } else {
        let mantissa = strip_trailing_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn strip_trailing_zeros(text: &str) -> String {
    if !text.contains('.') {
        return text.to_string();
    }
    text.trim_end_matches('0').trim_end_matches('.').to_string()
}
