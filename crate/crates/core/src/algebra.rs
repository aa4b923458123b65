//! Square complex matrices under the operator 2-norm: the concrete unital
//! normed algebra every other module works in.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::hermitian_eigenvalues;

/// Tolerance used by [`Matrix::is_unitary`] on `‖u*u − 1‖`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Relative tolerance used by [`Matrix::is_hermitian`] on `‖x − x*‖`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Tolerance on `‖x‖ − ‖x*‖`; the harness also applies it to `m` and `am` of
/// `x` versus `x*`.
pub const ADJOINT_NORM_TOL: f64 = 1e-9;

pub type Scalar = Complex64;

/// A `dim × dim` complex matrix, stored row-major. Entries are always finite.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Scalar>,
}

/// Closed interval `[lo, hi]` spanned by the eigenvalues of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralRange {
    pub lo: f64,
    pub hi: f64,
}

impl SpectralRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::BadShape(format!(
                "invalid spectral range [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    /// Operator norm of any Hermitian matrix with this range.
    pub fn norm(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }
}

impl Matrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn from_vec(dim: usize, data: Vec<Scalar>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadShape("dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::BadShape(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        if let Some(k) = data
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadShape("rows must all have length dim".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Scalar::new(v, 0.0)))
            .collect();
        Self::from_vec(dim, data)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self::from_vec(dim, data)
    }

    /// Diagonal matrix with real entries.
    pub fn diag(values: &[f64]) -> Result<Self> {
        Self::diag_complex(
            &values
                .iter()
                .map(|&v| Scalar::new(v, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    pub fn diag_complex(values: &[Scalar]) -> Result<Self> {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                values[i]
            } else {
                Scalar::new(0.0, 0.0)
            }
        })
    }

    /// # Panics
    /// If `dim == 0`.
    pub fn identity(dim: usize) -> Self {
        Self::diag(&vec![1.0; dim]).expect("identity needs dim >= 1")
    }

    /// # Panics
    /// If `dim == 0`.
    pub fn zeros(dim: usize) -> Self {
        Self::diag(&vec![0.0; dim]).expect("zero matrix needs dim >= 1")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.data[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    fn check_dim(&self, other: &Matrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(Scalar, Scalar) -> Scalar) -> Result<Matrix> {
        self.check_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Matrix {
            dim: self.dim,
            data,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Scalar) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|&a| a * c).collect(),
        }
    }

    /// `x − λ·1`.
    pub fn shift(&self, lambda: f64) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.data[i * self.dim + i] -= lambda;
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut data = vec![Scalar::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Scalar::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(Matrix { dim: n, data })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i].conj());
            }
        }
        Matrix { dim: n, data }
    }

    /// `x* x`, always Hermitian positive semidefinite.
    pub fn gram(&self) -> Matrix {
        let n = self.dim;
        let mut data = vec![Scalar::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i..n {
                let mut acc = Scalar::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.data[k * n + i].conj() * self.data[k * n + j];
                }
                data[i * n + j] = acc;
                data[j * n + i] = acc.conj();
            }
            data[i * n + i].im = 0.0;
        }
        Matrix { dim: n, data }
    }

    /// `(x + x*) / 2`.
    pub fn hermitian_part(&self) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, |i, j| 0.5 * (self.get(i, j) + self.get(j, i).conj()))
            .expect("finite input gives finite output")
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        let n = self.dim;
        Ok((0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * v[j]).sum())
            .collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Spectral norm: the largest singular value, computed as the square root
    /// of the largest eigenvalue of `x* x` by cyclic Jacobi.
    pub fn operator_norm(&self) -> f64 {
        let gram = self.gram();
        let eig = hermitian_eigenvalues(self.dim, &gram.data);
        eig.last().copied().unwrap_or(0.0).max(0.0).sqrt()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= HERMITIAN_TOL * self.operator_norm().max(1.0)
    }

    fn hermitian_defect(&self) -> f64 {
        self.sub(&self.adjoint()).expect("same dim").operator_norm()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary_defect() <= UNITARY_TOL
    }

    fn unitary_defect(&self) -> f64 {
        self.gram().shift(1.0).operator_norm()
    }

    /// Errors with [`Error::NotUnitary`] unless [`Matrix::is_unitary`] holds.
    pub fn require_unitary(&self) -> Result<()> {
        let defect = self.unitary_defect();
        if defect <= UNITARY_TOL {
            Ok(())
        } else {
            Err(Error::NotUnitary { defect })
        }
    }

    /// All eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        let defect = self.hermitian_defect();
        if defect > HERMITIAN_TOL * self.operator_norm().max(1.0) {
            return Err(Error::NotHermitian { defect });
        }
        Ok(hermitian_eigenvalues(self.dim, &self.data))
    }

    /// `[min eigenvalue, max eigenvalue]` of a Hermitian matrix.
    pub fn hermitian_range(&self) -> Result<SpectralRange> {
        let eig = self.hermitian_eigenvalues()?;
        Ok(SpectralRange {
            lo: eig[0],
            hi: eig[eig.len() - 1],
        })
    }

    /// Smallest eigenvalue of the Hermitian part `(x + x*)/2`.
    pub fn min_hermitian_part_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(self.dim, &self.hermitian_part().data)[0]
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        file.try_into()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&MatrixFile::from(self)).expect("matrix file serializes")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self.get(i, j);
                    format!("{}{:+}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// On-disk JSON layout: `{"dim": n, "re": [[..]], "im": [[..]]}` with `im`
/// optional and defaulting to zeros.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl TryFrom<MatrixFile> for Matrix {
    type Error = Error;

    fn try_from(file: MatrixFile) -> Result<Self> {
        let n = file.dim;
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if n == 0 || !shape_ok(&file.re) {
            return Err(Error::BadShape(format!("\"re\" is not a {n}x{n} array")));
        }
        if let Some(im) = &file.im {
            if !shape_ok(im) {
                return Err(Error::BadShape(format!("\"im\" is not a {n}x{n} array")));
            }
        }
        Matrix::from_fn(n, |i, j| {
            let im = file.im.as_ref().map_or(0.0, |m| m[i][j]);
            Scalar::new(file.re[i][j], im)
        })
    }
}

impl From<&Matrix> for MatrixFile {
    fn from(m: &Matrix) -> Self {
        let n = m.dim;
        let re = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j).re).collect())
            .collect();
        let has_im = m.data.iter().any(|z| z.im != 0.0);
        let im = has_im.then(|| {
            (0..n)
                .map(|i| (0..n).map(|j| m.get(i, j).im).collect())
                .collect()
        });
        MatrixFile { dim: n, re, im }
    }
}
