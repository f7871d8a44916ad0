//! Locale-independent float formatting for CSV emission.

/// Scientific notation with 15 significant digits.
///
/// All CSV writers in this crate funnel through here so golden-file
/// comparisons are bit-exact across platforms. Negative zero is
/// normalized; NaN (used for absent values) prints as an empty field.
pub(crate) fn g15(x: f64) -> String {
    if x.is_nan() {
        return String::new();
    }
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}
