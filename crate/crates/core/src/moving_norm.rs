//! Moving norm `m(λ) = ‖x − λ1‖`, augmented moving norm `am(λ) = m(λ) + λ`,
//! and the horizon of a nonexpansive element.
//!
//! For `‖x‖ ≤ 1` the map `λ ↦ am(λ)` is convex, starts at `‖x‖ ≤ 1` and is
//! bounded below by `λ`, so the set `{λ : am(λ) ≤ 1}` is an interval `[0, h]`
//! with `h ≤ 1`. The horizon is its right end point `h`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Matrix;
use crate::error::{Error, Result};

/// Values of `am` within this distance above 1 count as "equal to 1".
pub const FLAT_TOL: f64 = 1e-9;
/// Width of the final bisection bracket.
pub const LAMBDA_TOL: f64 = 1e-10;
/// Inputs with norm up to `1 + NORM_SLACK` are accepted as nonexpansive.
pub const NORM_SLACK: f64 = 1e-10;

// Tolerances of the properties exercised by the verification harness.
pub const SCALING_TOL: f64 = 1e-9;
pub const SUM_TOL: f64 = 1e-9;
pub const PRODUCT_TOL: f64 = 1e-9;
pub const CONVEXITY_TOL: f64 = 1e-9;
pub const LOWER_BOUND_TOL: f64 = 1e-12;
pub const HORIZON_INEQUALITY_TOL: f64 = 1e-7;
pub const ADJOINT_HORIZON_TOL: f64 = 1e-8;
pub const FLAT_NORM_TOL: f64 = 1e-8;

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeLambda(lambda))
    }
}

/// `‖x − λ1‖`.
pub fn moving_norm(x: &Matrix, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(x.shift(lambda).operator_norm())
}

/// `‖x − λ1‖ + λ`.
pub fn augmented_moving_norm(x: &Matrix, lambda: f64) -> Result<f64> {
    Ok(moving_norm(x, lambda)? + lambda)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MovingNormCurve {
    pub lambdas: Vec<f64>,
    pub m_values: Vec<f64>,
    pub am_values: Vec<f64>,
}

impl MovingNormCurve {
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }
}

/// Uniform grid of `points` values from 0 to `lambda_max` inclusive.
pub fn lambda_grid(lambda_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(lambda_max > 0.0 && lambda_max.is_finite()) {
        return Err(Error::BadGrid(format!(
            "lambda_max must be positive, got {lambda_max}"
        )));
    }
    if points < 2 {
        return Err(Error::BadGrid(format!(
            "need at least 2 grid points, got {points}"
        )));
    }
    let last = (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points).map(|i| lambda_max * i as f64 / last).collect();
    grid[points - 1] = lambda_max;
    Ok(grid)
}

/// Samples `m` and `am` on a uniform grid with `steps` points.
pub fn sample_curve(x: &Matrix, lambda_max: f64, steps: usize) -> Result<MovingNormCurve> {
    let lambdas = lambda_grid(lambda_max, steps)?;
    let m_values: Vec<f64> = lambdas
        .par_iter()
        .map(|&l| x.shift(l).operator_norm())
        .collect();
    let am_values = m_values.iter().zip(&lambdas).map(|(m, l)| m + l).collect();
    Ok(MovingNormCurve {
        lambdas,
        m_values,
        am_values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HorizonResult {
    pub value: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// `am` stays at 1 on a nondegenerate segment `[0, value]`.
    pub flat_at_one: bool,
    pub iterations: u32,
}

/// Horizon of a nonexpansive element: the largest `λ ∈ [0, 1]` with
/// `am(λ) ≤ 1 + FLAT_TOL`, located by bisection on the monotone predicate
/// `am(λ) > 1 + FLAT_TOL`.
pub fn horizon(x: &Matrix) -> Result<HorizonResult> {
    let norm = x.operator_norm();
    if norm > 1.0 + NORM_SLACK {
        return Err(Error::NotNonexpansive { norm });
    }
    let am = |l: f64| x.shift(l).operator_norm() + l;
    let above = |l: f64| am(l) > 1.0 + FLAT_TOL;

    let (value, lo, hi, iterations) = if !above(1.0) {
        (1.0, 1.0, 1.0, 0)
    } else {
        // am(0) = ‖x‖ ≤ 1 + NORM_SLACK, so 0 is never above.
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut iterations = 0;
        while hi - lo > LAMBDA_TOL {
            let mid = 0.5 * (lo + hi);
            if above(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
            iterations += 1;
        }
        (lo, lo, hi, iterations)
    };

    let flat_at_one = value > 1e-8 && am(0.5 * value) >= 1.0 - FLAT_TOL;
    Ok(HorizonResult {
        value,
        bracket_lo: lo,
        bracket_hi: hi,
        flat_at_one,
        iterations,
    })
}
