//! Theorem-by-theorem verification on random ensembles.
//!
//! Each [`Check`] draws its inputs from a [`Source`] with a per-trial
//! ChaCha8 stream and reports how far the stated inequality or equivalence
//! is from being violated. Trials are independent and run in parallel;
//! outcomes are collected in trial order and reduced sequentially, so
//! reports are bit-identical for identical inputs.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{self, Matrix};
use crate::classes::{self, fne_cosine_check, fne_inner_product_check, reflection};
use crate::ensemble::{self, substream_seed, trial_rng, EnsembleKind};
use crate::error::{Error, Result};
use crate::hermitian::{self, hermitian_am_closed_form, unitary_am_lower_bound_check};
use crate::moving_norm::{self as mn, augmented_moving_norm, horizon, moving_norm};

/// Tolerance of [`infimum_decomposition_check`]: passing means slack ≥ −tol.
pub const INFIMUM_TOL: f64 = 1e-9;

/// Number of random decompositions per infimum trial.
const DECOMPOSITIONS: usize = 24;
/// Random unit vectors per inner-product trial.
const TRIAL_VECTORS: usize = 200;
/// Points of the λ-grids used by the Hermitian and unitary checks.
const GRID_POINTS: usize = 64;
/// A horizon below this counts as zero when deciding vacuous premises.
const ZERO_HORIZON: f64 = 1e-6;

/// Which of `m` and `am` a curve-level check works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    Moving,
    Augmented,
}

impl Curve {
    pub fn eval(self, x: &Matrix, lambda: f64) -> Result<f64> {
        match self {
            Curve::Moving => moving_norm(x, lambda),
            Curve::Augmented => augmented_moving_norm(x, lambda),
        }
    }
}

/// `f(y, μ) + f(x − y, λ − μ) − f(x, λ)` for one decomposition.
pub fn decomposition_slack(
    curve: Curve,
    x: &Matrix,
    y: &Matrix,
    lambda: f64,
    mu: f64,
) -> Result<f64> {
    if !(mu >= 0.0 && mu <= lambda) {
        return Err(Error::NegativeLambda(lambda - mu));
    }
    let z = x.sub(y)?;
    Ok(curve.eval(y, mu)? + curve.eval(&z, lambda - mu)? - curve.eval(x, lambda)?)
}

/// Smallest slack of `am(y, μ) + am(z, ν) − am(x, λ)` over the trivial
/// decomposition and `trials` random ones `y = t·x + E`, `z = x − y`,
/// `μ = s·λ`, `ν = λ − μ`. Nonnegative up to round-off.
pub fn infimum_decomposition_check<R: Rng + ?Sized>(
    x: &Matrix,
    lambda: f64,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    infimum_decomposition_check_with(Curve::Augmented, x, lambda, trials, rng)
}

pub fn infimum_decomposition_check_with<R: Rng + ?Sized>(
    curve: Curve,
    x: &Matrix,
    lambda: f64,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    if !(lambda >= 0.0) {
        return Err(Error::NegativeLambda(lambda));
    }
    let mut worst = decomposition_slack(curve, x, x, lambda, lambda)?;
    for _ in 0..trials {
        let t: f64 = rng.random();
        let e = ensemble::ginibre(x.dim(), rng).scale_real(rng.random::<f64>());
        let y = x.scale_real(t).add(&e)?;
        let mu = rng.random::<f64>() * lambda;
        worst = worst.min(decomposition_slack(curve, x, &y, lambda, mu)?);
    }
    Ok(worst)
}

/// Where a check takes its matrices from.
#[derive(Debug, Clone)]
pub enum Source {
    Random {
        kind: EnsembleKind,
        norm_cap: f64,
    },
    /// Draws uniformly from a fixed list of equal-dimension matrices.
    Fixed {
        label: String,
        matrices: Vec<Matrix>,
    },
}

impl Source {
    pub fn label(&self) -> String {
        match self {
            Source::Random { kind, .. } => kind.name().to_string(),
            Source::Fixed { label, .. } => label.clone(),
        }
    }
}

/// Input class a check needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Needs {
    /// Any nonexpansive element.
    Any,
    Hermitian,
    Unitary,
    Fne,
    /// Nonexpansive elements away from the structurally boundary kinds
    /// (projections and unitaries sit exactly on the FNE boundary or far
    /// outside it).
    Generic,
}

impl Needs {
    fn admits_kind(self, kind: EnsembleKind) -> bool {
        use EnsembleKind::*;
        match self {
            Needs::Any => true,
            Needs::Hermitian => matches!(kind, Hermitian | Projection),
            Needs::Unitary => kind == Unitary,
            Needs::Fne => matches!(kind, Fne | Projection),
            Needs::Generic => matches!(kind, Ginibre | Hermitian | Fne | NilpotentLike),
        }
    }

    fn admits(self, m: &Matrix) -> bool {
        classes::is_nonexpansive(m)
            && match self {
                Needs::Any | Needs::Generic => true,
                Needs::Hermitian => m.is_hermitian(),
                Needs::Unitary => m.is_unitary(),
                Needs::Fne => classes::is_fne(m),
            }
    }
}

/// Result of one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Checked {
        violation: f64,
        failed: bool,
    },
    /// The implication's premise did not hold; nothing to check.
    Vacuous,
    /// Inside a boundary band where floating point cannot decide.
    Skipped,
}

impl Outcome {
    /// `violation > tol` fails.
    fn within(violation: f64, tol: f64) -> Self {
        Outcome::Checked {
            violation,
            failed: !(violation <= tol),
        }
    }

    fn agree(ok: bool) -> Self {
        Outcome::Checked {
            violation: if ok { 0.0 } else { 1.0 },
            failed: !ok,
        }
    }

    /// Any failure wins; otherwise any skip; otherwise the worst violation.
    fn combine(parts: &[Outcome]) -> Self {
        let mut out = Outcome::Vacuous;
        let mut skipped = false;
        for &p in parts {
            match p {
                Outcome::Skipped => skipped = true,
                Outcome::Vacuous => {}
                Outcome::Checked { violation, failed } => {
                    out = match out {
                        Outcome::Checked {
                            violation: v,
                            failed: f,
                        } => Outcome::Checked {
                            violation: v.max(violation),
                            failed: f || failed,
                        },
                        _ => p,
                    };
                }
            }
        }
        match out {
            Outcome::Checked { failed: true, .. } => out,
            _ if skipped => Outcome::Skipped,
            _ => out,
        }
    }
}

/// Inputs of one trial: the source to draw from and a private stream.
pub struct Trial<'a> {
    source: &'a Source,
    fixed: &'a [Matrix],
    dim: usize,
    rng: ChaCha8Rng,
}

impl Trial<'_> {
    fn draw(&mut self) -> Matrix {
        match self.source {
            Source::Random { kind, norm_cap } => {
                ensemble::sample(*kind, self.dim, *norm_cap, &mut self.rng)
            }
            Source::Fixed { .. } => {
                let i = self.rng.random_range(0..self.fixed.len());
                self.fixed[i].clone()
            }
        }
    }

    fn uniform(&mut self, hi: f64) -> f64 {
        self.rng.random::<f64>() * hi
    }
}

type TrialFn = fn(&mut Trial<'_>) -> Result<Outcome>;

/// One named theorem check.
pub struct Check {
    pub id: &'static str,
    pub tolerance: f64,
    needs: Needs,
    run: TrialFn,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub check_id: String,
    pub tolerance: f64,
    pub trials: usize,
    pub skipped: usize,
    pub failures: usize,
    /// Largest violation among checked trials; `None` if none was checked.
    pub worst_violation: Option<f64>,
    /// Trial seed that reproduces the worst violation via [`replay`].
    pub worst_seed: Option<u64>,
    pub worst_dim: Option<usize>,
    pub worst_source: Option<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn hor(x: &Matrix) -> Result<f64> {
    Ok(horizon(x)?.value)
}

fn scaling_m(t: &mut Trial<'_>) -> Result<Outcome> {
    scaling(t, Curve::Moving)
}

fn scaling_am(t: &mut Trial<'_>) -> Result<Outcome> {
    scaling(t, Curve::Augmented)
}

fn scaling(t: &mut Trial<'_>, curve: Curve) -> Result<Outcome> {
    let x = t.draw();
    let c = t.uniform(2.0);
    let l = t.uniform(2.0);
    let lhs = curve.eval(&x.scale_real(c), c * l)?;
    let rhs = c * curve.eval(&x, l)?;
    Ok(Outcome::within(
        (lhs - rhs).abs() / c.max(1.0),
        mn::SCALING_TOL,
    ))
}

fn sum_m(t: &mut Trial<'_>) -> Result<Outcome> {
    sum(t, Curve::Moving)
}

fn sum_am(t: &mut Trial<'_>) -> Result<Outcome> {
    sum(t, Curve::Augmented)
}

fn sum(t: &mut Trial<'_>, curve: Curve) -> Result<Outcome> {
    let (x, y) = (t.draw(), t.draw());
    let (l, mu) = (t.uniform(2.0), t.uniform(2.0));
    let lhs = curve.eval(&x.add(&y)?, l + mu)?;
    Ok(Outcome::within(
        lhs - curve.eval(&x, l)? - curve.eval(&y, mu)?,
        mn::SUM_TOL,
    ))
}

fn infimum_m(t: &mut Trial<'_>) -> Result<Outcome> {
    infimum(t, Curve::Moving)
}

fn infimum_am(t: &mut Trial<'_>) -> Result<Outcome> {
    infimum(t, Curve::Augmented)
}

fn infimum(t: &mut Trial<'_>, curve: Curve) -> Result<Outcome> {
    let x = t.draw();
    let l = t.uniform(2.0);
    let slack = infimum_decomposition_check_with(curve, &x, l, DECOMPOSITIONS, &mut t.rng)?;
    Ok(Outcome::within(-slack, INFIMUM_TOL))
}

fn product_am(t: &mut Trial<'_>) -> Result<Outcome> {
    let (x, y) = (t.draw(), t.draw());
    let (l, mu) = (t.uniform(2.0), t.uniform(2.0));
    let lhs = augmented_moving_norm(&x.mul(&y)?, l * mu)?;
    let rhs = augmented_moving_norm(&x, l)? * augmented_moving_norm(&y, mu)?;
    Ok(Outcome::within(lhs - rhs, mn::PRODUCT_TOL))
}

fn am_convexity(t: &mut Trial<'_>) -> Result<Outcome> {
    let x = t.draw();
    let (l1, l2, s) = (t.uniform(2.0), t.uniform(2.0), t.uniform(1.0));
    let mid = augmented_moving_norm(&x, s * l1 + (1.0 - s) * l2)?;
    let chord = s * augmented_moving_norm(&x, l1)? + (1.0 - s) * augmented_moving_norm(&x, l2)?;
    Ok(Outcome::within(mid - chord, mn::CONVEXITY_TOL))
}

fn am_lower_bound(t: &mut Trial<'_>) -> Result<Outcome> {
    let x = t.draw();
    let l = t.uniform(4.0);
    Ok(Outcome::within(
        l - augmented_moving_norm(&x, l)?,
        mn::LOWER_BOUND_TOL,
    ))
}

fn adjoint_moving_norm(t: &mut Trial<'_>) -> Result<Outcome> {
    let x = t.draw();
    let xs = x.adjoint();
    let l = t.uniform(2.0);
    let norm_gap = (x.operator_norm() - xs.operator_norm()).abs();
    let am_gap = (augmented_moving_norm(&x, l)? - augmented_moving_norm(&xs, l)?).abs();
    Ok(Outcome::within(
        norm_gap.max(am_gap),
        algebra::ADJOINT_NORM_TOL,
    ))
}

fn adjoint_horizon(t: &mut Trial<'_>) -> Result<Outcome> {
    let x = t.draw();
    let gap = (hor(&x)? - hor(&x.adjoint())?).abs();
    Ok(Outcome::within(gap, mn::ADJOINT_HORIZON_TOL))
}

fn dichotomy(t: &mut Trial<'_>) -> Result<Outcome> {
    let x = t.draw();
    let h = horizon(&x)?;
    let norm = x.operator_norm();
    if h.flat_at_one {
        return Ok(Outcome::within((norm - 1.0).abs(), mn::FLAT_NORM_TOL));
    }
    if h.value > ZERO_HORIZON && augmented_moving_norm(&x, 0.5 * h.value)? < 1.0 - mn::FLAT_TOL {
        // Strict: ‖x‖ < 1.
        let violation = norm - 1.0;
        return Ok(Outcome::Checked {
            violation,
            failed: !(violation < 0.0),
        });
    }
    Ok(Outcome::Vacuous)
}

fn horizon_convex(t: &mut Trial<'_>) -> Result<Outcome> {
    let (x, y) = (t.draw(), t.draw());
    let s = t.uniform(1.0);
    let mix = x.scale_real(s).add(&y.scale_real(1.0 - s))?;
    let bound = s * hor(&x)? + (1.0 - s) * hor(&y)?;
    Ok(Outcome::within(
        bound - hor(&mix)?,
        mn::HORIZON_INEQUALITY_TOL,
    ))
}

fn horizon_product(t: &mut Trial<'_>) -> Result<Outcome> {
    let (x, y) = (t.draw(), t.draw());
    let bound = hor(&x)? * hor(&y)?;
    Ok(Outcome::within(
        bound - hor(&x.mul(&y)?)?,
        mn::HORIZON_INEQUALITY_TOL,
    ))
}

fn cstar_am(t: &mut Trial<'_>) -> Result<Outcome> {
    let x = t.draw();
    let l = t.uniform(2.0);
    let xs = x.adjoint();
    let bound = augmented_moving_norm(&x, l)?.powi(2);
    let left = augmented_moving_norm(&xs.mul(&x)?, l * l)?;
    let right = augmented_moving_norm(&x.mul(&xs)?, l * l)?;
    Ok(Outcome::within(
        left.max(right) - bound,
        classes::CSTAR_AM_TOL,
    ))
}

fn cstar_horizon(t: &mut Trial<'_>) -> Result<Outcome> {
    let x = t.draw();
    let xs = x.adjoint();
    let bound = hor(&x)?.powi(2);
    let worst = hor(&xs.mul(&x)?)?.min(hor(&x.mul(&xs)?)?);
    Ok(Outcome::within(bound - worst, classes::CSTAR_HORIZON_TOL))
}

fn thm_unitary(t: &mut Trial<'_>) -> Result<Outcome> {
    let u = t.draw();
    let grid = mn::lambda_grid(2.0, GRID_POINTS)?;
    let below = -unitary_am_lower_bound_check(&u, &grid)?;
    let h = hor(&u)?;
    let tol = hermitian::UNITARY_AM_TOL;
    let mut flat = Outcome::Vacuous;
    for i in 0..=16 {
        let am = augmented_moving_norm(&u, h * i as f64 / 16.0)?;
        // Same comparison the horizon solver uses, so rounding in `am − 1`
        // cannot push a point the solver accepted over the tolerance.
        let part = Outcome::Checked {
            violation: am - 1.0,
            failed: !(am <= 1.0 + tol),
        };
        flat = Outcome::combine(&[flat, part]);
    }
    Ok(Outcome::combine(&[Outcome::within(below, tol), flat]))
}

fn thm_hermitian_am(t: &mut Trial<'_>) -> Result<Outcome> {
    let h = t.draw();
    let range = h.hermitian_range()?;
    let mut worst = 0.0f64;
    for l in mn::lambda_grid(2.0, GRID_POINTS)? {
        let gap = augmented_moving_norm(&h, l)? - hermitian_am_closed_form(range, l)?;
        worst = worst.max(gap.abs());
    }
    Ok(Outcome::within(worst, hermitian::CLOSED_FORM_AM_TOL))
}

fn thm_hermitian_horizon(t: &mut Trial<'_>) -> Result<Outcome> {
    let h = t.draw();
    let closed = hermitian::hermitian_horizon_closed_form(h.hermitian_range()?)?;
    Ok(Outcome::within(
        (hor(&h)? - closed).abs(),
        hermitian::CLOSED_FORM_HORIZON_TOL,
    ))
}

/// `Hor > 0 ⇔ a > −1` and `Hor = 1 ⇔ H = 1` for one Hermitian NE matrix.
fn hermitian_criteria(h: &Matrix) -> Result<Outcome> {
    let a = h.hermitian_range()?.lo;
    let value = hor(h)?;
    let band = hermitian::NEGATIVE_PART_BAND;
    let positive = if a + 1.0 > band {
        Outcome::agree(value > 0.0)
    } else {
        Outcome::agree(value <= band)
    };
    let distance = h.shift(1.0).operator_norm();
    let scalar_tol = hermitian::SCALAR_TOL;
    let top = if distance <= scalar_tol {
        Outcome::agree(value >= 1.0 - scalar_tol)
    } else if distance >= 4.0 * scalar_tol {
        Outcome::agree(value < 1.0 - scalar_tol)
    } else {
        Outcome::Skipped
    };
    Ok(Outcome::combine(&[positive, top]))
}

fn thm_hermitian_criteria(t: &mut Trial<'_>) -> Result<Outcome> {
    let h = t.draw();
    let n = h.dim();
    let mut parts = vec![hermitian_criteria(&h)?];
    let norm = h.operator_norm();
    if norm > 0.0 {
        // Pushes one end of the spectrum to ±1: half the time a = −1.
        parts.push(hermitian_criteria(&h.scale_real(1.0 / norm))?);
    }
    let c = if t.rng.random_bool(0.25) {
        1.0
    } else {
        t.uniform(1.0)
    };
    parts.push(hermitian_criteria(&Matrix::identity(n).scale_real(c))?);
    Ok(Outcome::combine(&parts))
}

fn thm_ne_corollary(t: &mut Trial<'_>) -> Result<Outcome> {
    let b = t.draw();
    let h = hor(&b)?;
    if h <= ZERO_HORIZON {
        return Ok(Outcome::Vacuous);
    }
    let (bsb, bbs) = (b.adjoint().mul(&b)?, b.mul(&b.adjoint())?);
    let mut ok = hor(&bsb)? > 0.0 && hor(&bbs)? > 0.0;
    ok &= bsb.hermitian_range()?.lo > -1.0 && bbs.hermitian_range()?.lo > -1.0;
    if h >= 1.0 - hermitian::SCALAR_TOL {
        let c = b.operator_norm().powi(2);
        ok &= bsb.shift(c).operator_norm() <= hermitian::SCALAR_TOL;
    }
    Ok(Outcome::agree(ok))
}

fn thm_fne_equiv(t: &mut Trial<'_>) -> Result<Outcome> {
    let a = t.draw();
    let band = classes::BOUNDARY_BAND;
    let h = hor(&a)?;
    if (reflection(&a).operator_norm() - 1.0).abs() <= band || (h - 0.5).abs() <= band {
        return Ok(Outcome::Skipped);
    }
    let by_norms = classes::is_fne(&a);
    let by_horizon = classes::is_fne_via_horizon(&a)?;
    let by_matrix = classes::is_fne_matrix_criterion(&a);
    let vectors: Vec<_> = (0..TRIAL_VECTORS)
        .map(|_| ensemble::random_vector(a.dim(), &mut t.rng))
        .collect();
    let by_vectors = fne_inner_product_check(&a, &vectors)? <= classes::RANDOM_VECTOR_TOL;
    // Random vectors can only refute FNE, never certify it.
    let ok = by_norms == by_horizon && by_norms == by_matrix && (!by_norms || by_vectors);
    Ok(Outcome::agree(ok))
}

fn fne_implies_ne_monotone(t: &mut Trial<'_>) -> Result<Outcome> {
    let a = t.draw();
    if !classes::is_fne(&a) {
        return Ok(Outcome::Vacuous);
    }
    let violation = (a.operator_norm() - 1.0).max(-a.min_hermitian_part_eigenvalue());
    Ok(Outcome::within(violation, classes::IMPLIED_TOL))
}

fn thm_fne_hermitian(t: &mut Trial<'_>) -> Result<Outcome> {
    let h = t.draw();
    let a = h.hermitian_range()?.lo;
    if a.abs() <= classes::BOUNDARY_BAND {
        return Ok(Outcome::Skipped);
    }
    Ok(Outcome::agree(
        classes::is_fne(&h) == (a >= -classes::HERMITIAN_FNE_TOL),
    ))
}

fn fne_inner_product(t: &mut Trial<'_>) -> Result<Outcome> {
    let a = t.draw();
    let vectors: Vec<_> = (0..TRIAL_VECTORS)
        .map(|_| ensemble::random_vector(a.dim(), &mut t.rng))
        .collect();
    let inner = fne_inner_product_check(&a, &vectors)?;
    let cosine = fne_cosine_check(&a, &vectors)?;
    Ok(Outcome::within(
        inner.max(cosine),
        classes::INNER_PRODUCT_TOL,
    ))
}

/// Every check, in report order.
pub fn checks() -> &'static [Check] {
    const fn c(id: &'static str, tolerance: f64, needs: Needs, run: TrialFn) -> Check {
        Check {
            id,
            tolerance,
            needs,
            run,
        }
    }
    static CHECKS: [Check; 25] = [
        c("eq4_scaling_m", mn::SCALING_TOL, Needs::Any, scaling_m),
        c("eq8_scaling_am", mn::SCALING_TOL, Needs::Any, scaling_am),
        c("eq5_sum_m", mn::SUM_TOL, Needs::Any, sum_m),
        c("eq9_sum_am", mn::SUM_TOL, Needs::Any, sum_am),
        c("eq6_infimum_m", INFIMUM_TOL, Needs::Any, infimum_m),
        c("eq10_infimum_am", INFIMUM_TOL, Needs::Any, infimum_am),
        c("eq12_product", mn::PRODUCT_TOL, Needs::Any, product_am),
        c("am_convexity", mn::CONVEXITY_TOL, Needs::Any, am_convexity),
        c(
            "am_lower_bound",
            mn::LOWER_BOUND_TOL,
            Needs::Any,
            am_lower_bound,
        ),
        c(
            "adjoint_moving_norm",
            algebra::ADJOINT_NORM_TOL,
            Needs::Any,
            adjoint_moving_norm,
        ),
        c(
            "adjoint_horizon",
            mn::ADJOINT_HORIZON_TOL,
            Needs::Any,
            adjoint_horizon,
        ),
        c(
            "eq14_15_dichotomy",
            mn::FLAT_NORM_TOL,
            Needs::Any,
            dichotomy,
        ),
        c(
            "thm_hor_sum",
            mn::HORIZON_INEQUALITY_TOL,
            Needs::Any,
            horizon_convex,
        ),
        c(
            "thm_hor_product",
            mn::HORIZON_INEQUALITY_TOL,
            Needs::Any,
            horizon_product,
        ),
        c("eq19_cstar", classes::CSTAR_AM_TOL, Needs::Any, cstar_am),
        c(
            "eq20_cstar_horizon",
            classes::CSTAR_HORIZON_TOL,
            Needs::Any,
            cstar_horizon,
        ),
        c(
            "thm_unitary",
            hermitian::UNITARY_AM_TOL,
            Needs::Unitary,
            thm_unitary,
        ),
        c(
            "thm_hermitian_closed_form",
            hermitian::CLOSED_FORM_AM_TOL,
            Needs::Hermitian,
            thm_hermitian_am,
        ),
        c(
            "thm_hermitian_horizon",
            hermitian::CLOSED_FORM_HORIZON_TOL,
            Needs::Hermitian,
            thm_hermitian_horizon,
        ),
        c(
            "thm_hermitian_criteria",
            0.0,
            Needs::Hermitian,
            thm_hermitian_criteria,
        ),
        c(
            "thm_ne_unitary_corollary",
            0.0,
            Needs::Any,
            thm_ne_corollary,
        ),
        c("thm_fne_equiv", 0.0, Needs::Generic, thm_fne_equiv),
        c(
            "fne_implies_ne_monotone",
            classes::IMPLIED_TOL,
            Needs::Any,
            fne_implies_ne_monotone,
        ),
        c(
            "thm_fne_hermitian",
            0.0,
            Needs::Hermitian,
            thm_fne_hermitian,
        ),
        c(
            "eq29_30_fne_inner_product",
            classes::INNER_PRODUCT_TOL,
            Needs::Fne,
            fne_inner_product,
        ),
    ];
    &CHECKS
}

pub fn find_check(id: &str) -> Option<&'static Check> {
    checks().iter().find(|c| c.id == id)
}

/// One source at one dimension.
#[derive(Debug, Clone)]
pub struct SourceGroup {
    pub dim: usize,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub dims: Vec<usize>,
    /// Trials per check and dimension, spread over the admissible kinds.
    pub trials: usize,
    pub seed: u64,
    pub norm_cap: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3, 4, 8],
            trials: 500,
            seed: 1,
            norm_cap: 1.0,
        }
    }
}

impl VerifyConfig {
    /// Every ensemble kind at every dimension.
    pub fn groups(&self) -> Result<Vec<SourceGroup>> {
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::BadSpec("dims must be nonempty and positive".into()));
        }
        if !(self.norm_cap > 0.0 && self.norm_cap <= 1.0) {
            return Err(Error::BadSpec(format!(
                "norm_cap {} not in (0, 1]",
                self.norm_cap
            )));
        }
        Ok(self
            .dims
            .iter()
            .flat_map(|&dim| {
                EnsembleKind::ALL.into_iter().map(move |kind| SourceGroup {
                    dim,
                    source: Source::Random {
                        kind,
                        norm_cap: self.norm_cap,
                    },
                })
            })
            .collect())
    }
}

pub fn run_all(config: &VerifyConfig) -> Result<Vec<TheoremReport>> {
    run_groups(&config.groups()?, config.trials, config.seed)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn dim_seed(seed: u64, check: &Check, dim: usize) -> u64 {
    substream_seed(substream_seed(seed, fnv1a(check.id)), dim as u64)
}

fn admitted(check: &Check, source: &Source) -> Option<Vec<Matrix>> {
    match source {
        Source::Random { kind, .. } => check.needs.admits_kind(*kind).then(Vec::new),
        Source::Fixed { matrices, .. } => {
            let keep: Vec<Matrix> = matrices
                .iter()
                .filter(|m| check.needs.admits(m))
                .cloned()
                .collect();
            (!keep.is_empty()).then_some(keep)
        }
    }
}

fn run_trial(
    check: &Check,
    source: &Source,
    fixed: &[Matrix],
    dim: usize,
    seed: u64,
) -> Result<Outcome> {
    let mut trial = Trial {
        source,
        fixed,
        dim,
        rng: trial_rng(seed),
    };
    (check.run)(&mut trial)
}

/// Re-runs a single trial, e.g. the worst one of a report.
pub fn replay(check_id: &str, source: &Source, dim: usize, trial_seed: u64) -> Result<Outcome> {
    let check = find_check(check_id)
        .ok_or_else(|| Error::BadSpec(format!("unknown check {check_id:?}")))?;
    let fixed = admitted(check, source).ok_or_else(|| {
        Error::BadSpec(format!(
            "check {check_id} does not apply to {}",
            source.label()
        ))
    })?;
    run_trial(check, source, &fixed, dim, trial_seed)
}

/// Runs every check `trials` times per dimension. Trial `i` at a dimension
/// draws from the `i mod k`-th of the `k` groups of that dimension the check
/// applies to.
pub fn run_groups(groups: &[SourceGroup], trials: usize, seed: u64) -> Result<Vec<TheoremReport>> {
    for g in groups {
        if let Source::Fixed { matrices, .. } = &g.source {
            if matrices.is_empty() {
                return Err(Error::BadSpec(format!(
                    "fixed source {} is empty",
                    g.source.label()
                )));
            }
            if let Some(m) = matrices.iter().find(|m| m.dim() != g.dim) {
                return Err(Error::DimensionMismatch {
                    left: g.dim,
                    right: m.dim(),
                });
            }
        }
    }
    Ok(checks()
        .iter()
        .map(|check| run_check(check, groups, trials, seed))
        .collect())
}

fn run_check(check: &Check, groups: &[SourceGroup], trials: usize, seed: u64) -> TheoremReport {
    let mut report = TheoremReport {
        check_id: check.id.to_string(),
        tolerance: check.tolerance,
        trials: 0,
        skipped: 0,
        failures: 0,
        worst_violation: None,
        worst_seed: None,
        worst_dim: None,
        worst_source: None,
    };
    let mut dims: Vec<usize> = Vec::new();
    for g in groups {
        if !dims.contains(&g.dim) {
            dims.push(g.dim);
        }
    }
    for dim in dims {
        let sources: Vec<(&Source, Vec<Matrix>)> = groups
            .iter()
            .filter(|g| g.dim == dim)
            .filter_map(|g| admitted(check, &g.source).map(|fixed| (&g.source, fixed)))
            .collect();
        if sources.is_empty() {
            continue;
        }
        let base = dim_seed(seed, check, dim);
        let outcomes: Vec<(usize, u64, Result<Outcome>)> = (0..trials)
            .into_par_iter()
            .map(|i| {
                let k = i % sources.len();
                let s = substream_seed(base, i as u64);
                (k, s, run_trial(check, sources[k].0, &sources[k].1, dim, s))
            })
            .collect();
        for (k, s, outcome) in outcomes {
            report.trials += 1;
            match outcome {
                Err(_) => report.failures += 1,
                Ok(Outcome::Skipped) => report.skipped += 1,
                Ok(Outcome::Vacuous) => {}
                Ok(Outcome::Checked { violation, failed }) => {
                    report.failures += usize::from(failed);
                    if report.worst_violation.is_none_or(|w| violation > w) {
                        report.worst_violation = Some(violation);
                        report.worst_seed = Some(s);
                        report.worst_dim = Some(dim);
                        report.worst_source = Some(sources[k].0.label());
                    }
                }
            }
        }
    }
    report
}
