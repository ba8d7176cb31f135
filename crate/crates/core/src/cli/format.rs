//! Number formatting shared by the CSV and JSON writers.

/// Significant digits kept for printed energies and coefficients.
pub const SIGNIFICANT_DIGITS: usize = 10;

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

/// Plain decimal for moderate magnitudes, exponent form otherwise.
pub fn fmt_sig(x: f64) -> String {
    let r = round_sig(x);
    let a = r.abs();
    if r == 0.0 {
        "0".to_string()
    } else if (1e-4..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_digits() {
        assert_eq!(fmt_sig(0.232050807568877_2), "0.2320508076");
        assert_eq!(fmt_sig(3.464101615137754), "3.464101615");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(4.440892098500626e-16), "4.440892099e-16");
        assert_eq!(fmt_sig(1.0), "1");
    }
}
