//! Fixed float formatting shared by every table this crate writes.

/// Scientific notation with 9 significant digits. Negative zero prints as zero.
pub fn sci(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.8e}")
}

/// Rounds `x` to the value that [`sci`] prints, so a printed number parses back to it.
pub fn quantize(x: f64) -> f64 {
    sci(x).parse().expect("formatted float parses")
}
