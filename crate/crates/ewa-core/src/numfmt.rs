//! Fixed-width numeric formatting for reproducible CSV/JSON artifacts.

/// Format a float with 12 significant digits.
///
/// Plain decimal notation is used for magnitudes in `[1e-4, 1e12)`,
/// scientific notation outside. The mapping is deterministic so equal inputs
/// always produce byte-identical text.
pub fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}
