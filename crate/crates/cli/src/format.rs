//! Fixed-width numeric formatting for CSV output.
//!
//! `{:.N}` rounds the exact binary value half-to-even, which is what the
//! golden files rely on. Negative zero is printed without its sign.

pub fn fixed(v: f64, digits: usize) -> String {
    let s = format!("{v:.digits$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_owned(),
        _ => s,
    }
}

/// Bandwidth: kbps with three decimals.
pub fn kbps(v: f64) -> String {
    fixed(v, 3)
}

/// Satisfaction level: six decimals.
pub fn level(v: f64) -> String {
    fixed(v, 6)
}
