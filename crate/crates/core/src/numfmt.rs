//! `%g`-style number formatting for the text outputs (CSV and meshes).

/// Formats `x` with `sig` significant digits, fixed notation when the
/// decimal exponent is in `[-5, sig)` and scientific otherwise. Trailing
/// zeros are kept so columns line up between rows.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        // also folds -0.0
        return format!("{:.*}", sig.saturating_sub(1), 0.0);
    }
    let sig = sig.max(1);
    // rounding can bump the exponent (9.99..9 -> 10.0), so take it from the
    // scientific rendering rather than from log10
    let sci = format!("{:.*e}", sig - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        sci
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}
