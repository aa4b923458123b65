//! Reproducible random matrix ensembles.
//!
//! Every sample is drawn from its own ChaCha8 stream keyed by a 64-bit
//! substream seed derived from `(seed, index)`, so samples do not depend on
//! generation order and any single one can be regenerated in isolation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleKind {
    /// i.i.d. standard complex normal entries rescaled to norm `cap·u`.
    Ginibre,
    /// `(G + G*)/2` rescaled to norm `cap·u`.
    Hermitian,
    /// Haar unitary from the QR factorization of a Ginibre matrix.
    Unitary,
    /// Orthogonal projection onto the span of `k` Haar columns.
    Projection,
    /// `(1 + C)/2` with `C` a Ginibre sample.
    Fne,
    /// Strictly upper triangular Gaussian rescaled to norm `cap·u`.
    NilpotentLike,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 6] = [
        EnsembleKind::Ginibre,
        EnsembleKind::Hermitian,
        EnsembleKind::Unitary,
        EnsembleKind::Projection,
        EnsembleKind::Fne,
        EnsembleKind::NilpotentLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Ginibre => "ginibre",
            EnsembleKind::Hermitian => "hermitian",
            EnsembleKind::Unitary => "unitary",
            EnsembleKind::Projection => "projection",
            EnsembleKind::Fne => "fne",
            EnsembleKind::NilpotentLike => "nilpotent-like",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EnsembleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::BadSpec(format!("unknown ensemble kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dim: usize,
    pub count: usize,
    pub seed: u64,
    /// Norm ceiling for the rescaled kinds, in `(0, 1]`.
    pub norm_cap: f64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::BadSpec("dim must be at least 1".into()));
        }
        if self.count == 0 {
            return Err(Error::BadSpec("count must be at least 1".into()));
        }
        if !(self.norm_cap > 0.0 && self.norm_cap <= 1.0) {
            return Err(Error::BadSpec(format!(
                "norm_cap {} not in (0, 1]",
                self.norm_cap
            )));
        }
        Ok(())
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of substream `index` under `seed`.
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    mix64(mix64(seed) ^ index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))
}

pub fn trial_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generate(spec: &EnsembleSpec) -> Result<Vec<Matrix>> {
    spec.validate()?;
    Ok((0..spec.count as u64)
        .map(|i| {
            let mut rng = trial_rng(substream_seed(spec.seed, i));
            sample(spec.kind, spec.dim, spec.norm_cap, &mut rng)
        })
        .collect())
}

/// One sample of `kind`. `dim` must be positive.
pub fn sample<R: Rng + ?Sized>(
    kind: EnsembleKind,
    dim: usize,
    norm_cap: f64,
    rng: &mut R,
) -> Matrix {
    match kind {
        EnsembleKind::Ginibre => {
            let g = ginibre(dim, rng);
            rescale_random(&g, norm_cap, rng)
        }
        EnsembleKind::Hermitian => {
            let g = ginibre(dim, rng);
            let h = g.hermitian_part();
            rescale_random(&h, norm_cap, rng)
        }
        EnsembleKind::Unitary => haar_unitary(dim, rng),
        EnsembleKind::Projection => {
            let rank = rng.random_range(1..=dim);
            projection(dim, rank, rng)
        }
        EnsembleKind::Fne => {
            let c = sample(EnsembleKind::Ginibre, dim, norm_cap, rng);
            c.shift(-1.0).scale_real(0.5)
        }
        EnsembleKind::NilpotentLike => {
            let g = ginibre(dim, rng);
            let upper = Matrix::from_fn(dim, |i, j| {
                if j > i {
                    g.get(i, j)
                } else {
                    Scalar::new(0.0, 0.0)
                }
            })
            .expect("finite");
            rescale_random(&upper, norm_cap, rng)
        }
    }
}

fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Scalar::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Entries i.i.d. standard complex normal (`E|z|² = 1`).
pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(dim, |_, _| standard_complex(rng)).expect("gaussian samples are finite")
}

pub fn random_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Scalar> {
    (0..dim).map(|_| standard_complex(rng)).collect()
}

/// Uniform in `(0, 1]`.
fn unit_interval_open_left<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.random::<f64>()
}

/// Rescales `m` to operator norm `cap·u`, `u` uniform in `(0, 1]`. The zero
/// matrix is returned unchanged.
fn rescale_random<R: Rng + ?Sized>(m: &Matrix, cap: f64, rng: &mut R) -> Matrix {
    let target = cap * unit_interval_open_left(rng);
    let norm = m.operator_norm();
    if norm == 0.0 {
        m.clone()
    } else {
        m.scale_real(target / norm)
    }
}

/// Columns of a Ginibre matrix orthonormalized by Gram–Schmidt (two passes).
/// The implied `R` has positive real diagonal, which makes the result Haar
/// distributed.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix {
    let g = ginibre(dim, rng);
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<Scalar> = (0..dim).map(|i| g.get(i, j)).collect();
        for _ in 0..2 {
            for q in &cols {
                let coef: Scalar = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= coef * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for vi in &mut v {
            *vi /= norm;
        }
        cols.push(v);
    }
    Matrix::from_fn(dim, |i, j| cols[j][i]).expect("orthonormal columns are finite")
}

/// Orthogonal projection `Q Q*` onto the span of the first `rank` columns of
/// a Haar unitary.
pub fn projection<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Matrix {
    let q = haar_unitary(dim, rng);
    let entry = |i: usize, j: usize| -> Scalar {
        (0..rank).map(|l| q.get(i, l) * q.get(j, l).conj()).sum()
    };
    let mut data = vec![Scalar::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let v = entry(i, j);
            data[i * dim + j] = v;
            data[j * dim + i] = v.conj();
        }
        data[i * dim + i].im = 0.0;
    }
    Matrix::from_vec(dim, data).expect("finite")
}
