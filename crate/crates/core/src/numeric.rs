//! Shared scalar helpers and tolerances.

use num_complex::Complex64;

/// Verblunsky coefficients with `|alpha| >= 1 - SUPPORT_TOL` are rejected.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Relative factor in the homography pole guard `|den| <= DEN_TOL * (1 + |num|)`.
pub const DEN_TOL: f64 = 1e-13;

/// Absolute guard for the real recursions (`1 - alpha`, partial LU pivots).
pub const DIV_GUARD: f64 = 1e-14;

#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Largest mixed absolute/relative deviation `|a - b| / max(1, |b|)`.
///
/// Returns `f64::INFINITY` when the lengths differ.
pub fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / y.abs().max(1.0))
        .fold(0.0, f64::max)
}

pub fn max_deviation_c(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm() / y.norm().max(1.0))
        .fold(0.0, f64::max)
}

/// `Err(index)` when `den` is too small to divide by.
#[inline]
pub(crate) fn guarded(den: f64, index: usize) -> crate::Result<f64> {
    if den.abs() <= DIV_GUARD || !den.is_finite() {
        Err(crate::Error::DivisionDegenerate { index })
    } else {
        Ok(den)
    }
}

/// Rejects a freshly computed real Verblunsky coefficient outside (-1, 1).
#[inline]
pub(crate) fn in_support(value: f64, index: usize) -> crate::Result<f64> {
    if !value.is_finite() || value.abs() >= 1.0 - SUPPORT_TOL {
        Err(crate::Error::SupportViolation { index, value })
    } else {
        Ok(value)
    }
}
