//! Nonexpansive, monotone and firmly nonexpansive linear operators.
//!
//! For a linear `A` on `ℂⁿ`:
//! * NE means `‖A‖ ≤ 1`;
//! * monotone means `Re⟨Ax, x⟩ ≥ 0` for all `x`, i.e. `(A + A*)/2 ⪰ 0`;
//! * FNE means `A` and `2A − 1` are both NE, equivalently
//!   `‖Ax‖² ≤ Re⟨Ax, x⟩` for all `x`, equivalently `(A + A*)/2 − A*A ⪰ 0`,
//!   equivalently (for NE `A`) `horizon(A) ≥ 1/2`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix, Scalar};
use crate::error::{Error, Result};
use crate::moving_norm::{horizon, NORM_SLACK};

/// Slack on the norm tests of [`is_nonexpansive`] and [`is_fne`].
pub const NE_TOL: f64 = 1e-10;
pub const MONOTONE_TOL: f64 = 1e-10;
/// Slack on the smallest eigenvalue of `(A + A*)/2 − A*A`.
pub const FNE_GAP_TOL: f64 = 1e-10;
pub const FNE_HORIZON_TOL: f64 = 1e-8;

// Tolerances of the properties exercised by the verification harness.
pub const IMPLIED_TOL: f64 = 1e-9;
pub const BOUNDARY_BAND: f64 = 1e-6;
pub const INNER_PRODUCT_TOL: f64 = 1e-9;
pub const RANDOM_VECTOR_TOL: f64 = 1e-8;
pub const HERMITIAN_FNE_TOL: f64 = 1e-9;
pub const CSTAR_AM_TOL: f64 = 1e-9;
pub const CSTAR_HORIZON_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub ne: bool,
    pub monotone: bool,
    pub fne: bool,
    /// `horizon(A) ≥ 1/2`; false when `A` is not NE (the horizon is then
    /// undefined).
    pub fne_via_horizon: bool,
    pub norm: f64,
    /// Smallest eigenvalue of `(A + A*)/2`.
    pub min_sym_eig: f64,
    /// Smallest eigenvalue of `(A + A*)/2 − A*A`.
    pub fne_gap: f64,
    pub horizon: Option<f64>,
}

pub fn is_nonexpansive(a: &Matrix) -> bool {
    a.operator_norm() <= 1.0 + NE_TOL
}

pub fn is_monotone(a: &Matrix) -> bool {
    a.min_hermitian_part_eigenvalue() >= -MONOTONE_TOL
}

/// `2A − 1`.
pub fn reflection(a: &Matrix) -> Matrix {
    a.scale_real(2.0).shift(1.0)
}

pub fn is_fne(a: &Matrix) -> bool {
    is_nonexpansive(a) && reflection(a).operator_norm() <= 1.0 + NE_TOL
}

pub fn is_fne_via_horizon(a: &Matrix) -> Result<bool> {
    let norm = a.operator_norm();
    if norm > 1.0 + NORM_SLACK {
        return Err(Error::NotNonexpansive { norm });
    }
    Ok(horizon(a)?.value >= 0.5 - FNE_HORIZON_TOL)
}

/// Smallest eigenvalue of `(A + A*)/2 − A*A`; nonnegative exactly for FNE `A`.
pub fn fne_gap(a: &Matrix) -> f64 {
    let q = a.hermitian_part().sub(&a.gram()).expect("same dim");
    q.hermitian_eigenvalues()
        .expect("difference of Hermitian matrices")[0]
}

pub fn is_fne_matrix_criterion(a: &Matrix) -> bool {
    fne_gap(a) >= -FNE_GAP_TOL
}

fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

fn norm_sqr(v: &[Scalar]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn unit(x: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = norm_sqr(x).sqrt();
    (n > 0.0).then(|| x.iter().map(|z| z / n).collect())
}

/// Largest `‖Ax‖² − Re⟨Ax, x⟩` over the trial vectors, each normalized to
/// unit length (zero vectors are ignored). At most 0 for FNE `A` up to
/// round-off.
pub fn fne_inner_product_check(a: &Matrix, trial_vectors: &[Vec<Scalar>]) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for x in trial_vectors {
        let Some(x) = unit(x) else { continue };
        let ax = a.apply(&x)?;
        worst = worst.max(norm_sqr(&ax) - dot(&ax, &x).re);
    }
    Ok(worst)
}

/// Largest `‖Ax‖ − cos∠(Ax, x)·‖x‖` over unit trial vectors, skipping those
/// with `Ax = 0`. The cosine form of [`fne_inner_product_check`].
pub fn fne_cosine_check(a: &Matrix, trial_vectors: &[Vec<Scalar>]) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for x in trial_vectors {
        let Some(x) = unit(x) else { continue };
        let ax = a.apply(&x)?;
        let ax_norm = norm_sqr(&ax).sqrt();
        if ax_norm == 0.0 {
            continue;
        }
        let cos = dot(&ax, &x).re / ax_norm;
        worst = worst.max(ax_norm - cos);
    }
    Ok(worst)
}

pub fn classify(a: &Matrix) -> ClassReport {
    let norm = a.operator_norm();
    let ne = norm <= 1.0 + NE_TOL;
    let min_sym_eig = a.min_hermitian_part_eigenvalue();
    let fne = ne && reflection(a).operator_norm() <= 1.0 + NE_TOL;
    let horizon = if norm <= 1.0 + NORM_SLACK {
        horizon(a).ok().map(|h| h.value)
    } else {
        None
    };
    ClassReport {
        ne,
        monotone: min_sym_eig >= -MONOTONE_TOL,
        fne,
        fne_via_horizon: horizon.is_some_and(|h| h >= 0.5 - FNE_HORIZON_TOL),
        norm,
        min_sym_eig,
        fne_gap: fne_gap(a),
        horizon,
    }
}
