//! Cyclic Jacobi eigenvalue iteration for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]` with a
//! diagonal unitary and then applies the classical real Jacobi rotation, so
//! the whole step is a unitary similarity. Only eigenvalues are tracked.
//! No randomness is involved: the same input always produces the same
//! sequence of rotations and therefore bit-identical output.

use num_complex::Complex64;

/// Off-diagonal mass (squared Frobenius) relative to the total at which a
/// sweep loop stops.
const OFF_DIAGONAL_RATIO: f64 = 1e-28;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues of the Hermitian matrix stored row-major in `data`,
/// sorted ascending.
///
/// Only the upper triangle and the real part of the diagonal are read; the
/// caller is responsible for Hermitian symmetry.
pub(crate) fn hermitian_eigenvalues(dim: usize, data: &[Complex64]) -> Vec<f64> {
    debug_assert_eq!(data.len(), dim * dim);
    let mut a = data.to_vec();
    for i in 0..dim {
        a[i * dim + i] = Complex64::new(a[i * dim + i].re, 0.0);
        for j in 0..i {
            a[i * dim + j] = a[j * dim + i].conj();
        }
    }

    for _ in 0..MAX_SWEEPS {
        let (off, total) = mass(dim, &a);
        if off <= OFF_DIAGONAL_RATIO * total {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                rotate(dim, &mut a, p, q);
            }
        }
    }

    let mut eig: Vec<f64> = (0..dim).map(|i| a[i * dim + i].re).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

fn mass(dim: usize, a: &[Complex64]) -> (f64, f64) {
    let mut off = 0.0;
    let mut diag = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let v = a[i * dim + j].norm_sqr();
            if i == j {
                diag += v;
            } else {
                off += v;
            }
        }
    }
    (off, off + diag)
}

fn rotate(dim: usize, a: &mut [Complex64], p: usize, q: usize) {
    let g = a[p * dim + q];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let app = a[p * dim + p].re;
    let aqq = a[q * dim + q].re;
    // Pivot negligible against both diagonal entries: zero it outright.
    if app.abs() + 1e-3 * g_abs == app.abs() && aqq.abs() + 1e-3 * g_abs == aqq.abs() {
        a[p * dim + q] = Complex64::new(0.0, 0.0);
        a[q * dim + p] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = g / g_abs;
    let theta = 0.5 * (aqq - app) / g_abs;
    let t = {
        let t = 1.0 / (theta.abs() + theta.hypot(1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let phase_conj = phase.conj();

    for r in 0..dim {
        if r == p || r == q {
            continue;
        }
        let arp = a[r * dim + p];
        let arq = a[r * dim + q] * phase_conj;
        let new_rp = arp * c - arq * s;
        let new_rq = arp * s + arq * c;
        a[r * dim + p] = new_rp;
        a[r * dim + q] = new_rq;
        a[p * dim + r] = new_rp.conj();
        a[q * dim + r] = new_rq.conj();
    }
    a[p * dim + p] = Complex64::new(app - t * g_abs, 0.0);
    a[q * dim + q] = Complex64::new(aqq + t * g_abs, 0.0);
    a[p * dim + q] = Complex64::new(0.0, 0.0);
    a[q * dim + p] = Complex64::new(0.0, 0.0);
}
