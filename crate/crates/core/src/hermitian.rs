//! Closed forms for Hermitian elements and the unitary lower bound.
//!
//! With `[a, b]` the spectral range (`a` the smallest eigenvalue), the
//! augmented moving norm of a Hermitian matrix is
//! `max(|a − λ|, |b − λ|) + λ`. On `λ ≥ 0` this equals `b` up to the midpoint
//! `(a + b)/2` and `2λ − a` after it, so a nonexpansive Hermitian matrix has
//! horizon `(1 + a)/2`.

use crate::algebra::{Matrix, SpectralRange};
use crate::error::{Error, Result};
use crate::moving_norm::NORM_SLACK;

pub const CLOSED_FORM_AM_TOL: f64 = 1e-8;
pub const CLOSED_FORM_HORIZON_TOL: f64 = 1e-7;
/// Band around `a = −1` inside which "horizon > 0" is not decided.
pub const NEGATIVE_PART_BAND: f64 = 1e-7;
pub const SCALAR_TOL: f64 = 1e-8;
pub const UNITARY_AM_TOL: f64 = 1e-9;

/// `max(|a − λ|, |b − λ|) + λ`.
pub fn hermitian_am_closed_form(range: SpectralRange, lambda: f64) -> Result<f64> {
    if !(lambda >= 0.0) {
        return Err(Error::NegativeLambda(lambda));
    }
    Ok((range.lo - lambda).abs().max((range.hi - lambda).abs()) + lambda)
}

/// The same function written piecewise: `b` before the midpoint, `2λ − a`
/// after it.
pub fn hermitian_am_two_branch(range: SpectralRange, lambda: f64) -> Result<f64> {
    if !(lambda >= 0.0) {
        return Err(Error::NegativeLambda(lambda));
    }
    let mid = 0.5 * (range.lo + range.hi);
    Ok(if lambda <= mid {
        range.hi
    } else {
        2.0 * lambda - range.lo
    })
}

/// `(1 + a)/2` for a range inside `[−1, 1]`.
pub fn hermitian_horizon_closed_form(range: SpectralRange) -> Result<f64> {
    let norm = range.norm();
    if norm > 1.0 + NORM_SLACK {
        return Err(Error::NotNonexpansive { norm });
    }
    Ok((0.5 * (1.0 + range.lo)).clamp(0.0, 1.0))
}

/// `min over the grid of am(u, λ) − 1`; nonnegative (up to round-off) for
/// every unitary `u`.
pub fn unitary_am_lower_bound_check(u: &Matrix, lambdas: &[f64]) -> Result<f64> {
    u.require_unitary()?;
    let mut worst = f64::INFINITY;
    for &l in lambdas {
        if !(l >= 0.0) {
            return Err(Error::NegativeLambda(l));
        }
        worst = worst.min(u.shift(l).operator_norm() + l - 1.0);
    }
    Ok(worst)
}
