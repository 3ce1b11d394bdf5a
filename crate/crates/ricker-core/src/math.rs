//! Thin shims over the float functions we need, so the crate body stays
//! identical with and without `std`. With `std` the intrinsic-backed methods
//! are used; without it everything routes through `libm`.

#[cfg(feature = "std")]
pub(crate) fn exp(x: f64) -> f64 {
    x.exp()
}

#[cfg(not(feature = "std"))]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[cfg(feature = "std")]
pub(crate) fn ln(x: f64) -> f64 {
    x.ln()
}

#[cfg(not(feature = "std"))]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[cfg(feature = "std")]
pub(crate) fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

#[cfg(not(feature = "std"))]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[cfg(feature = "std")]
pub(crate) fn abs(x: f64) -> f64 {
    x.abs()
}

#[cfg(not(feature = "std"))]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Relative closeness with an absolute floor of 1: `|a - b| <= tol * max(1, |a|, |b|)`.
/// This is the comparison used throughout for orbit values, which live on
/// scales from ~1e-12 up to ~1e2.
pub(crate) fn close(a: f64, b: f64, tol: f64) -> bool {
    abs(a - b) <= tol * abs(a).max(abs(b)).max(1.0)
}

/// Strictly relative closeness: `|a - b| <= tol * max(|a|, |b|)`, with exact
/// equality (including both zero) accepted.
pub(crate) fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    abs(a - b) <= tol * abs(a).max(abs(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shims_match_std() {
        // ln(1) must be exactly zero: the reduction step relies on it.
        assert_eq!(ln(1.0), 0.0);
        assert_eq!(exp(0.0), 1.0);
        assert_eq!(sqrt(4.0), 2.0);
        assert_eq!(abs(-3.5), 3.5);
    }

    #[test]
    fn closeness_floors_at_one() {
        assert!(close(1e-12, 2e-12, 1e-9));
        assert!(!close(1.0, 1.1, 1e-9));
        assert!(close_rel(0.0, 0.0, 1e-9));
        assert!(!close_rel(1e-12, 2e-12, 1e-9));
    }
}
