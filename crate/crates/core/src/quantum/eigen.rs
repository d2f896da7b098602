//! Cyclic Jacobi eigendecomposition for complex Hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal pair `(p, q)`: the entry's
//! phase is rotated away first, reducing the 2x2 block to the real symmetric
//! case, then a plane rotation zeroes it. Sweeps repeat until the
//! off-diagonal Frobenius mass (relative to the largest entry) drops below
//! [`OFF_DIAGONAL_TOLERANCE`].

use num_complex::Complex64;

use super::QuantumError;

pub(crate) const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;
pub(crate) const MAX_SWEEPS: usize = 100;

/// Eigenvalues (descending) and eigenvectors (row-major matrix whose column
/// `j` belongs to eigenvalue `j`) of a Hermitian matrix given in row-major
/// order. The Hermiticity of the input is the caller's responsibility.
pub(crate) fn eigen_hermitian(
    dim: usize,
    matrix: &[Complex64],
) -> Result<(Vec<f64>, Vec<Complex64>), QuantumError> {
    assert_eq!(matrix.len(), dim * dim);
    let mut vectors = identity(dim);
    if dim == 1 {
        return Ok((vec![matrix[0].re], vectors));
    }

    let scale = matrix.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    if scale == 0.0 {
        return Ok((vec![0.0; dim], vectors));
    }
    let mut a: Vec<Complex64> = matrix.iter().map(|z| z / scale).collect();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(dim, &a) < OFF_DIAGONAL_TOLERANCE {
            converged = true;
            break;
        }
        for p in 0..dim - 1 {
            for q in p + 1..dim {
                rotate(dim, &mut a, &mut vectors, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(dim, &a) >= OFF_DIAGONAL_TOLERANCE {
        return Err(QuantumError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..dim).collect();
    let values: Vec<f64> = (0..dim).map(|i| a[i * dim + i].re * scale).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));

    let sorted_values: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut sorted_vectors = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..dim {
            sorted_vectors[row * dim + col] = vectors[row * dim + src];
        }
    }
    Ok((sorted_values, sorted_vectors))
}

fn identity(dim: usize) -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        m[i * dim + i] = Complex64::new(1.0, 0.0);
    }
    m
}

fn off_diagonal_norm(dim: usize, a: &[Complex64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                acc += a[i * dim + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation annihilating the `(p, q)` entry in place, with the
/// accumulated eigenvector matrix updated to match.
fn rotate(dim: usize, a: &mut [Complex64], v: &mut [Complex64], p: usize, q: usize) {
    let apq = a[p * dim + q];
    let norm_apq = apq.norm();
    if norm_apq == 0.0 {
        return;
    }
    let phase = apq / norm_apq;
    let phase_conj = phase.conj();

    let app = a[p * dim + p].re;
    let aqq = a[q * dim + q].re;
    let tau = (aqq - app) / (2.0 * norm_apq);
    let t = if tau.abs() > 1e150 {
        -0.5 / tau
    } else {
        -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Columns p and q of A <- A * U.
    for k in 0..dim {
        let akp = a[k * dim + p];
        let akq = a[k * dim + q];
        a[k * dim + p] = c * akp + s * phase_conj * akq;
        a[k * dim + q] = -s * akp + c * phase_conj * akq;
    }
    // Rows p and q of A <- U^H * A.
    for k in 0..dim {
        let apk = a[p * dim + k];
        let aqk = a[q * dim + k];
        a[p * dim + k] = c * apk + s * phase * aqk;
        a[q * dim + k] = -s * apk + c * phase * aqk;
    }
    // The rotation is built to zero these; remove the rounding residue.
    a[p * dim + q] = Complex64::new(0.0, 0.0);
    a[q * dim + p] = Complex64::new(0.0, 0.0);
    a[p * dim + p] = Complex64::new(a[p * dim + p].re, 0.0);
    a[q * dim + q] = Complex64::new(a[q * dim + q].re, 0.0);

    // V <- V * U keeps columns as eigenvector estimates.
    for k in 0..dim {
        let vkp = v[k * dim + p];
        let vkq = v[k * dim + q];
        v[k * dim + p] = c * vkp + s * phase_conj * vkq;
        v[k * dim + q] = -s * vkp + c * phase_conj * vkq;
    }
}
