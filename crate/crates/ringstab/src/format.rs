//! Fixed-precision number formatting for the JSON and CSV outputs.

/// Significant digits written for every real number.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Formats `x` with 15 significant digits.
///
/// Positional notation for decimal exponents in `-5..15`, scientific
/// (`1.5e-7`) otherwise. Trailing fractional zeros are dropped and `-0`
/// prints as `0`. Non-finite values print as `NaN`, `inf`, `-inf`.
pub fn sig15(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();

    if !(-5..15).contains(&exp) {
        return format!("{sign}{}e{exp}", trim_fraction(mantissa));
    }
    let body = if exp >= 0 {
        let split = exp as usize + 1;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    format!("{sign}{}", trim_fraction(&body))
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
