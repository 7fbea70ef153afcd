//! Number formatting shared by the CSV and report writers.

/// Shortest decimal that parses back to the same `f64`.
///
/// Plain notation for moderate magnitudes, scientific notation outside
/// `[1e-5, 1e16)`; both forms round-trip bit-exactly.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}
