//! Moving norms, augmented moving norms and horizons of elements of the
//! normed algebra of square complex matrices under the operator 2-norm,
//! together with nonexpansive / firmly nonexpansive operator predicates and
//! a randomized verification harness for the inequalities relating them.
//!
//! ```
//! use movnorm::{horizon, Matrix};
//!
//! let projection = Matrix::diag(&[1.0, 0.0]).unwrap();
//! let h = horizon(&projection).unwrap();
//! assert!((h.value - 0.5).abs() < 1e-8);
//! assert!(h.flat_at_one);
//! ```

// `!(a <= b)` is used on purpose so that NaN fails a comparison.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod classes;
pub mod ensemble;
mod error;
pub mod hermitian;
mod jacobi;
pub mod moving_norm;
pub mod verify;

pub use algebra::{Matrix, MatrixFile, Scalar, SpectralRange};
pub use classes::{classify, ClassReport};
pub use ensemble::{EnsembleKind, EnsembleSpec};
pub use error::{Error, Result};
pub use moving_norm::{
    augmented_moving_norm, horizon, moving_norm, sample_curve, HorizonResult, MovingNormCurve,
};
pub use verify::{run_all, TheoremReport, VerifyConfig};
