//! Preparation uncertainty (mixedness) for quantum states.
//!
//! The classical construction carries over with the maximally mixed state
//! `I/d` in the role of the uniform distribution and any pure state in the
//! role of a certain distribution:
//!
//! ```text
//! U(rho) = D(pure ‖ I/d) − D(rho ‖ I/d)
//! ```
//!
//! The reference term does not depend on which pure state is used (all the
//! supported distances are unitarily invariant around `I/d`; the entrywise
//! l_p distance for p ≠ 2 is the documented exception and is evaluated with
//! the computational-basis reference). Supported distances: Bures and
//! Hellinger (via fidelity/affinity), Schatten-p and entrywise l_p norms,
//! Hilbert–Schmidt, sandwiched Rényi, and quantum Tsallis.
//!
//! Everything is backed by the self-contained Jacobi eigensolver in
//! [`eigen`](self) — no external linear algebra.

mod eigen;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::distributions::ProbabilityDistribution;
use crate::SUPPORT_EPS;

/// Hermiticity is enforced entrywise to this tolerance.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
/// Unit trace is enforced to this tolerance.
pub const TRACE_TOLERANCE: f64 = 1e-9;
/// Eigenvalues may undershoot zero by this much; smaller values are rejected.
pub const PSD_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    BadShape {
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("not Hermitian at ({row},{col}): deviation {deviation:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },
    #[error("not positive semidefinite: min eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("states are orthogonal; the divergence diverges for order > 1")]
    OrthogonalStates,
    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),
    #[error("rank {rank} out of range for dimension {dim}")]
    RankOutOfRange { rank: usize, dim: usize },
    #[error("reference distance is infinite")]
    InfiniteReference,
    #[error("cannot parse density matrix: {0}")]
    Parse(String),
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// (within the tolerances above). Stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

/// Eigendecomposition of a density matrix: eigenvalues sorted descending,
/// eigenvectors as the columns of a row-major unitary.
#[derive(Debug, Clone)]
pub struct Spectrum {
    dim: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Complex64>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Raw eigenvalues, descending; may dip below zero by up to
    /// [`PSD_TOLERANCE`].
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvalues with the negative tail clamped to zero, for use in
    /// spectral functions (square roots, fractional powers, logs).
    pub fn clamped_eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|&v| v.max(0.0)).collect()
    }

    /// Row-major unitary whose column `j` is the eigenvector of
    /// `eigenvalues()[j]`.
    pub fn eigenvector_matrix(&self) -> &[Complex64] {
        &self.eigenvectors
    }

    /// Builds `V f(Lambda) V^H` from the clamped eigenvalues.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Vec<Complex64> {
        let d = self.dim;
        let fv: Vec<f64> = self.clamped_eigenvalues().iter().map(|&l| f(l)).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &fk) in fv.iter().enumerate() {
                    acc += self.eigenvectors[i * d + k] * fk * self.eigenvectors[j * d + k].conj();
                }
                out[i * d + j] = acc;
            }
        }
        out
    }
}

impl DensityMatrix {
    /// Validates `entries` (row-major, length `dim * dim`) as a density
    /// matrix. Checks run in order: shape, Hermiticity, trace, positivity.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, QuantumError> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(QuantumError::BadShape {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        for i in 0..dim {
            for j in i..dim {
                let dev = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
                if dev > HERMITIAN_TOLERANCE {
                    return Err(QuantumError::NotHermitian {
                        row: i,
                        col: j,
                        deviation: dev,
                    });
                }
            }
        }
        let trace: f64 = (0..dim).map(|i| entries[i * dim + i].re).sum();
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(QuantumError::NotUnitTrace { trace });
        }
        let matrix = Self { dim, data: entries };
        let spectrum = matrix.spectrum()?;
        let min = spectrum
            .eigenvalues()
            .iter()
            .fold(f64::INFINITY, |m, &v| m.min(v));
        if min < -PSD_TOLERANCE {
            return Err(QuantumError::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(matrix)
    }

    /// Builds from interleaved `(re, im)` pairs, row-major.
    pub fn from_parts(dim: usize, parts: &[(f64, f64)]) -> Result<Self, QuantumError> {
        Self::new(
            dim,
            parts.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
        )
    }

    /// Builds a real symmetric matrix from row-major reals.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self, QuantumError> {
        Self::new(
            dim,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// `I/d`, the maximally mixed state.
    pub fn maximally_mixed(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Self { dim, data }
    }

    /// The pure state `|index><index|` in the computational basis.
    pub fn pure(dim: usize, index: usize) -> Result<Self, QuantumError> {
        if index >= dim {
            return Err(QuantumError::RankOutOfRange { rank: index, dim });
        }
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        data[index * dim + index] = Complex64::new(1.0, 0.0);
        Ok(Self { dim, data })
    }

    /// Diagonal density matrix carrying a classical distribution.
    pub fn from_diagonal(dist: &ProbabilityDistribution) -> Self {
        let dim = dist.n();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &p) in dist.probs().iter().enumerate() {
            data[i * dim + i] = Complex64::new(p, 0.0);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// `Tr rho^2`, computed entrywise (exact for Hermitian input).
    pub fn purity(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigendecomposition via cyclic Jacobi rotations.
    pub fn spectrum(&self) -> Result<Spectrum, QuantumError> {
        let (eigenvalues, eigenvectors) = eigen::eigen_hermitian(self.dim, &self.data)?;
        Ok(Spectrum {
            dim: self.dim,
            eigenvalues,
            eigenvectors,
        })
    }

    /// A random density matrix of the requested rank: a simplex-weighted
    /// mixture of orthonormalized complex Gaussian pure states.
    /// Deterministic per seed.
    pub fn random(dim: usize, rank: usize, seed: u64) -> Result<Self, QuantumError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(dim, rank, &mut rng)
    }

    /// Like [`Self::random`], drawing from a caller-owned RNG.
    pub fn random_with<R: Rng>(dim: usize, rank: usize, rng: &mut R) -> Result<Self, QuantumError> {
        if rank == 0 || rank > dim {
            return Err(QuantumError::RankOutOfRange { rank, dim });
        }
        // Weights strictly above the rank-detection threshold so the output
        // rank is exactly as requested.
        let weights = loop {
            let raw: Vec<f64> = (0..rank).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let sum: f64 = raw.iter().sum();
            if sum <= 0.0 {
                continue;
            }
            let w: Vec<f64> = raw.iter().map(|x| x / sum).collect();
            if w.iter().all(|&x| x > 1e-9) {
                break w;
            }
        };
        let vectors = random_orthonormal_columns(dim, rank, rng);
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (k, &w) in weights.iter().enumerate() {
            for i in 0..dim {
                for j in 0..dim {
                    data[i * dim + j] += w * vectors[i * rank + k] * vectors[j * rank + k].conj();
                }
            }
        }
        Self::new(dim, data)
    }
}

/// `V diag(sqrt(lambda)) V^H`; squares back to the input within rounding.
///
/// Eigenvalues at noise level count as zero: fractional powers amplify
/// rounding noise (`sqrt(1e-16) = 1e-8`) far beyond the solver's accuracy.
pub fn matrix_sqrt(rho: &DensityMatrix) -> Result<Vec<Complex64>, QuantumError> {
    Ok(rho
        .spectrum()?
        .apply(|l| if l > SUPPORT_EPS { l.sqrt() } else { 0.0 }))
}

/// Uhlmann fidelity `Tr sqrt(sqrt(rho) sigma sqrt(rho))`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64, QuantumError> {
    check_dims(rho, sigma)?;
    let d = rho.dim();
    let s = matrix_sqrt(rho)?;
    let inner = mat_mul(d, &mat_mul(d, &s, sigma.data()), &s);
    let (values, _) = eigen::eigen_hermitian(d, &inner)?;
    Ok(values
        .iter()
        .filter(|&&v| v > SUPPORT_EPS)
        .map(|&v| v.sqrt())
        .sum())
}

/// Affinity `Tr sqrt(rho) sqrt(sigma)`.
pub fn affinity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64, QuantumError> {
    check_dims(rho, sigma)?;
    let d = rho.dim();
    let product = mat_mul(d, &matrix_sqrt(rho)?, &matrix_sqrt(sigma)?);
    Ok(mat_trace(d, &product).re)
}

/// Distance family between density matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuantumDistance {
    /// `2 − 2 F(rho, sigma)`.
    Bures,
    /// `2 − 2 A(rho, sigma)` (affinity-based Hellinger).
    Hellinger,
    /// Schatten p-norm of `rho − sigma` (p >= 1), on eigenvalues.
    Schatten { p: f64 },
    /// Entrywise l_p norm of `rho − sigma` (p >= 1); basis-dependent for
    /// p != 2.
    Entrywise { p: f64 },
    /// `Tr (rho − sigma)^2` (the squared Frobenius norm).
    HilbertSchmidt,
    /// Sandwiched Rényi divergence of order `alpha > 0`;
    /// `(1/(α−1)) log2 Tr (σ^((1−α)/2α) ρ σ^((1−α)/2α))^α`, α = 1 being the
    /// relative-entropy limit.
    SandwichedRenyi { alpha: f64 },
    /// Quantum Tsallis divergence `(Tr ρ^β σ^(1−β) − 1)/(β−1)`, β = 1 being
    /// the relative-entropy limit.
    QuantumTsallis { beta: f64 },
}

impl QuantumDistance {
    /// Short stable label for reports.
    pub fn label(&self) -> String {
        match *self {
            QuantumDistance::Bures => "bures".to_string(),
            QuantumDistance::Hellinger => "qhellinger".to_string(),
            QuantumDistance::Schatten { p } => format!("schatten({p})"),
            QuantumDistance::Entrywise { p } => format!("lp({p})"),
            QuantumDistance::HilbertSchmidt => "hs".to_string(),
            QuantumDistance::SandwichedRenyi { alpha } => format!("gen-renyi({alpha})"),
            QuantumDistance::QuantumTsallis { beta } => format!("gen-tsallis({beta})"),
        }
    }
}

/// Evaluates the distance `D(rho ‖ sigma)`; `+∞` is a value, not an error.
pub fn distance(
    spec: QuantumDistance,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<f64, QuantumError> {
    check_dims(rho, sigma)?;
    let d = rho.dim();
    match spec {
        QuantumDistance::Bures => Ok(2.0 - 2.0 * fidelity(rho, sigma)?),
        QuantumDistance::Hellinger => Ok(2.0 - 2.0 * affinity(rho, sigma)?),
        QuantumDistance::Schatten { p } => {
            require_norm_order(p)?;
            let diff = mat_sub(rho.data(), sigma.data());
            let (values, _) = eigen::eigen_hermitian(d, &diff)?;
            Ok(values.iter().map(|&v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p))
        }
        QuantumDistance::Entrywise { p } => {
            require_norm_order(p)?;
            let acc: f64 = rho
                .data()
                .iter()
                .zip(sigma.data())
                .map(|(a, b)| (a - b).norm().powf(p))
                .sum();
            Ok(acc.powf(1.0 / p))
        }
        QuantumDistance::HilbertSchmidt => {
            let acc: f64 = rho
                .data()
                .iter()
                .zip(sigma.data())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum();
            Ok(acc)
        }
        QuantumDistance::SandwichedRenyi { alpha } => sandwiched_renyi(alpha, rho, sigma),
        QuantumDistance::QuantumTsallis { beta } => quantum_tsallis(beta, rho, sigma),
    }
}

/// `U(rho) = D(pure ‖ I/d) − D(rho ‖ I/d)` with the computational-basis pure
/// reference.
pub fn induced_uncertainty(spec: QuantumDistance, rho: &DensityMatrix) -> Result<f64, QuantumError> {
    let d = rho.dim();
    let pure = DensityMatrix::pure(d, 0)?;
    let mixed = DensityMatrix::maximally_mixed(d);
    let reference = distance(spec, &pure, &mixed)?;
    if !reference.is_finite() {
        return Err(QuantumError::InfiniteReference);
    }
    let at_rho = distance(spec, rho, &mixed)?;
    if !at_rho.is_finite() {
        return Err(QuantumError::InfiniteReference);
    }
    Ok(reference - at_rho)
}

/// Von Neumann entropy in bits: Shannon entropy of the spectrum.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64, QuantumError> {
    let spectrum = rho.spectrum()?;
    Ok(-spectrum
        .clamped_eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.log2())
        .sum::<f64>())
}

fn sandwiched_renyi(
    alpha: f64,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<f64, QuantumError> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(QuantumError::UnsupportedOrder(format!(
            "sandwiched Renyi needs alpha > 0, got {alpha}"
        )));
    }
    if alpha == 1.0 {
        return umegaki_relative_entropy(rho, sigma);
    }
    let d = rho.dim();
    if alpha > 1.0 {
        let overlap = mat_trace(d, &mat_mul(d, rho.data(), sigma.data())).re;
        if overlap <= 1e-14 {
            return Err(QuantumError::OrthogonalStates);
        }
    }
    let sig = sigma.spectrum()?;
    let mu = sig.clamped_eigenvalues();
    let support: Vec<usize> = (0..d).filter(|&i| mu[i] > SUPPORT_EPS).collect();
    let rho_in_sigma = basis_change(d, sig.eigenvector_matrix(), rho.data());
    let mass_on_support: f64 = support.iter().map(|&i| rho_in_sigma[i * d + i].re).sum();
    if alpha > 1.0 && 1.0 - mass_on_support > 1e-12 {
        return Ok(f64::INFINITY);
    }
    // A = diag(mu^c) rho~ diag(mu^c) restricted to sigma's support.
    let c = (1.0 - alpha) / (2.0 * alpha);
    let m = support.len();
    let mut a = vec![Complex64::new(0.0, 0.0); m * m];
    for (ai, &i) in support.iter().enumerate() {
        for (aj, &j) in support.iter().enumerate() {
            a[ai * m + aj] = mu[i].powf(c) * mu[j].powf(c) * rho_in_sigma[i * d + j];
        }
    }
    let (values, _) = eigen::eigen_hermitian(m, &a)?;
    let s: f64 = values
        .iter()
        .filter(|&&v| v > SUPPORT_EPS)
        .map(|&v| v.powf(alpha))
        .sum();
    if s <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(s.log2() / (alpha - 1.0))
}

fn quantum_tsallis(
    beta: f64,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<f64, QuantumError> {
    if beta == 1.0 {
        return umegaki_relative_entropy(rho, sigma);
    }
    let d = rho.dim();
    let rho_beta = rho.spectrum()?.apply(|l| if l > SUPPORT_EPS { l.powf(beta) } else { 0.0 });
    let sig = sigma.spectrum()?;
    let mu = sig.clamped_eigenvalues();
    let projected = basis_change(d, sig.eigenvector_matrix(), &rho_beta);
    let mut sum = 0.0;
    for i in 0..d {
        let weight = projected[i * d + i].re.max(0.0);
        if weight <= SUPPORT_EPS {
            continue;
        }
        if mu[i] <= SUPPORT_EPS {
            if beta > 1.0 {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        sum += mu[i].powf(1.0 - beta) * weight;
    }
    Ok((sum - 1.0) / (beta - 1.0))
}

/// `Tr rho (log2 rho − log2 sigma)`, the order-1 limit of both quantum
/// divergence families.
fn umegaki_relative_entropy(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<f64, QuantumError> {
    let d = rho.dim();
    let rho_spec = rho.spectrum()?;
    let term1: f64 = rho_spec
        .clamped_eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.log2())
        .sum();
    let sig = sigma.spectrum()?;
    let mu = sig.clamped_eigenvalues();
    let projected = basis_change(d, sig.eigenvector_matrix(), rho.data());
    let mut term2 = 0.0;
    for i in 0..d {
        let weight = projected[i * d + i].re.max(0.0);
        if weight <= SUPPORT_EPS {
            continue;
        }
        if mu[i] <= SUPPORT_EPS {
            return Ok(f64::INFINITY);
        }
        term2 += weight * mu[i].log2();
    }
    Ok(term1 - term2)
}

fn require_norm_order(p: f64) -> Result<(), QuantumError> {
    if p.is_nan() || p < 1.0 {
        return Err(QuantumError::UnsupportedOrder(format!(
            "norm order must be >= 1, got {p}"
        )));
    }
    Ok(())
}

fn check_dims(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<(), QuantumError> {
    if rho.dim() != sigma.dim() {
        return Err(QuantumError::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    Ok(())
}

// --- small dense complex matrix helpers -----------------------------------

pub(crate) fn mat_mul(d: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik.re == 0.0 && aik.im == 0.0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    out
}

pub(crate) fn mat_trace(d: usize, a: &[Complex64]) -> Complex64 {
    (0..d).map(|i| a[i * d + i]).sum()
}

fn mat_sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `W^H A W` for a row-major unitary `W`.
pub(crate) fn basis_change(d: usize, w: &[Complex64], a: &[Complex64]) -> Vec<Complex64> {
    let mut wh = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            wh[i * d + j] = w[j * d + i].conj();
        }
    }
    mat_mul(d, &wh, &mat_mul(d, a, w))
}

/// `W rho W^H`, revalidated as a density matrix.
pub fn conjugate(rho: &DensityMatrix, unitary: &[Complex64]) -> Result<DensityMatrix, QuantumError> {
    let d = rho.dim();
    if unitary.len() != d * d {
        return Err(QuantumError::BadShape {
            dim: d,
            expected: d * d,
            got: unitary.len(),
        });
    }
    let mut uh = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            uh[i * d + j] = unitary[j * d + i].conj();
        }
    }
    DensityMatrix::new(d, mat_mul(d, &mat_mul(d, unitary, rho.data()), &uh))
}

fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    // Box-Muller on the seeded stream; no OS entropy involved.
    let u1 = loop {
        let u = rng.gen::<f64>();
        if u > 0.0 {
            break u;
        }
    };
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    Complex64::new(r * theta.cos(), r * theta.sin())
}

/// `cols` orthonormal columns of length `dim` (row-major `dim x cols`),
/// from Gram-Schmidt on complex Gaussian vectors.
fn random_orthonormal_columns<R: Rng>(dim: usize, cols: usize, rng: &mut R) -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); dim * cols];
    for col in 0..cols {
        'resample: loop {
            let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
            // Two Gram-Schmidt passes keep orthogonality near machine level.
            for _ in 0..2 {
                for prev in 0..col {
                    let mut dot = Complex64::new(0.0, 0.0);
                    for i in 0..dim {
                        dot += m[i * cols + prev].conj() * v[i];
                    }
                    for i in 0..dim {
                        v[i] -= dot * m[i * cols + prev];
                    }
                }
            }
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                continue 'resample;
            }
            for (i, z) in v.iter().enumerate() {
                m[i * cols + col] = z / norm;
            }
            break;
        }
    }
    m
}

/// A Haar-ish random unitary (orthonormalized complex Gaussian columns),
/// deterministic per seed. Row-major.
pub fn random_unitary(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_orthonormal_columns(dim, dim, &mut rng)
}

// --- text format -----------------------------------------------------------

/// Parses the density-matrix text format: first non-empty line is `d`,
/// followed by `d` rows of `d` whitespace-separated `re:im` pairs.
pub fn parse_density_matrix(text: &str) -> Result<DensityMatrix, QuantumError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let dim_line = lines
        .next()
        .ok_or_else(|| QuantumError::Parse("empty input".to_string()))?;
    let dim: usize = dim_line
        .parse()
        .map_err(|_| QuantumError::Parse(format!("bad dimension line {dim_line:?}")))?;
    if dim == 0 {
        return Err(QuantumError::Parse("dimension must be positive".to_string()));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let line = lines
            .next()
            .ok_or_else(|| QuantumError::Parse(format!("missing row {row}")))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != dim {
            return Err(QuantumError::Parse(format!(
                "row {row} has {} entries, expected {dim}",
                tokens.len()
            )));
        }
        for token in tokens {
            let (re, im) = token
                .split_once(':')
                .ok_or_else(|| QuantumError::Parse(format!("entry {token:?} is not re:im")))?;
            let re: f64 = re
                .parse()
                .map_err(|_| QuantumError::Parse(format!("bad real part {re:?}")))?;
            let im: f64 = im
                .parse()
                .map_err(|_| QuantumError::Parse(format!("bad imaginary part {im:?}")))?;
            data.push(Complex64::new(re, im));
        }
    }
    if lines.next().is_some() {
        return Err(QuantumError::Parse("trailing content after matrix".to_string()));
    }
    DensityMatrix::new(dim, data)
}

/// Writes the same format `parse_density_matrix` reads, 17 significant
/// digits per component (lossless for f64).
pub fn format_density_matrix(rho: &DensityMatrix) -> String {
    let d = rho.dim();
    let mut out = format!("{d}\n");
    for i in 0..d {
        let row: Vec<String> = (0..d)
            .map(|j| {
                let z = rho.entry(i, j);
                format!("{:.16e}:{:.16e}", z.re, z.im)
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mix(p: f64) -> DensityMatrix {
        // p |0><0| + (1-p) I/2 in d = 2.
        DensityMatrix::from_real(2, &[(1.0 + p) / 2.0, 0.0, 0.0, (1.0 - p) / 2.0]).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(DensityMatrix::from_real(2, &[0.5, 0.0, 0.0, 0.5]).is_ok());
        let rho = DensityMatrix::from_real(2, &[0.75, 0.25, 0.25, 0.25]).unwrap();
        let spec = rho.spectrum().unwrap();
        let expected_hi = (1.0 + 0.5_f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(spec.eigenvalues()[0], expected_hi, epsilon = 1e-10);
        assert_abs_diff_eq!(spec.eigenvalues()[1], 1.0 - expected_hi, epsilon = 1e-10);

        assert!(matches!(
            DensityMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.1]),
            Err(QuantumError::NotUnitTrace { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(2, vec![c(0.5, 0.0), c(0.1, 0.0), c(0.3, 0.0), c(0.5, 0.0)]),
            Err(QuantumError::NotHermitian { .. })
        ));
        assert!(matches!(
            DensityMatrix::from_real(2, &[1.5, 0.0, 0.0, -0.5]),
            Err(QuantumError::NotPsd { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(2, vec![c(1.0, 0.0)]),
            Err(QuantumError::BadShape { .. })
        ));
    }

    #[test]
    fn sqrt_examples() {
        let quarter = DensityMatrix::maximally_mixed(4);
        let s = matrix_sqrt(&quarter).unwrap();
        for i in 0..4 {
            assert_abs_diff_eq!(s[i * 4 + i].re, 0.5, epsilon = 1e-12);
        }
        let rho = DensityMatrix::from_real(2, &[0.9, 0.0, 0.0, 0.1]).unwrap();
        let s = matrix_sqrt(&rho).unwrap();
        assert_abs_diff_eq!(s[0].re, 0.9_f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(s[3].re, 0.1_f64.sqrt(), epsilon = 1e-12);
        // A projector is its own square root.
        let pure = DensityMatrix::pure(3, 1).unwrap();
        let s = matrix_sqrt(&pure).unwrap();
        for (a, b) in s.iter().zip(pure.data()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-9);
        }
        // Square of the root returns the original.
        let rho = DensityMatrix::random(4, 3, 5).unwrap();
        let s = matrix_sqrt(&rho).unwrap();
        let squared = mat_mul(4, &s, &s);
        for (a, b) in squared.iter().zip(rho.data()) {
            assert!((a - b).norm() < 1e-8);
        }
    }

    #[test]
    fn distances_vanish_on_equal_states() {
        let rho = DensityMatrix::random(3, 2, 9).unwrap();
        for spec in all_specs() {
            let v = distance(spec, &rho, &rho).unwrap();
            assert!(v.abs() < 1e-7, "{spec:?} gave {v}");
        }
    }

    fn all_specs() -> Vec<QuantumDistance> {
        vec![
            QuantumDistance::Bures,
            QuantumDistance::Hellinger,
            QuantumDistance::Schatten { p: 1.0 },
            QuantumDistance::Schatten { p: 2.0 },
            QuantumDistance::Entrywise { p: 2.0 },
            QuantumDistance::HilbertSchmidt,
            QuantumDistance::SandwichedRenyi { alpha: 0.5 },
            QuantumDistance::SandwichedRenyi { alpha: 2.0 },
            QuantumDistance::QuantumTsallis { beta: 0.5 },
            QuantumDistance::QuantumTsallis { beta: 2.0 },
        ]
    }

    #[test]
    fn distance_examples() {
        let pure = DensityMatrix::pure(2, 0).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert_abs_diff_eq!(
            distance(QuantumDistance::HilbertSchmidt, &pure, &mixed).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            distance(QuantumDistance::SandwichedRenyi { alpha: 2.0 }, &pure, &mixed).unwrap(),
            1.0,
            epsilon = 1e-9
        );
        // Orthogonal pure states diverge for alpha > 1.
        let other = DensityMatrix::pure(2, 1).unwrap();
        assert!(matches!(
            distance(QuantumDistance::SandwichedRenyi { alpha: 2.0 }, &pure, &other),
            Err(QuantumError::OrthogonalStates)
        ));
        assert!(matches!(
            distance(QuantumDistance::Schatten { p: 0.5 }, &pure, &mixed),
            Err(QuantumError::UnsupportedOrder(_))
        ));
        let bigger = DensityMatrix::maximally_mixed(3);
        assert!(matches!(
            distance(QuantumDistance::Bures, &pure, &bigger),
            Err(QuantumError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn induced_uncertainty_examples() {
        let rho = mix(0.5);
        assert_abs_diff_eq!(
            induced_uncertainty(QuantumDistance::HilbertSchmidt, &rho).unwrap(),
            0.375,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            induced_uncertainty(QuantumDistance::Schatten { p: 1.0 }, &rho).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        let expected_bures = 2.0 / 2.0_f64.sqrt() * (0.75_f64.sqrt() + 0.25_f64.sqrt() - 1.0);
        assert_abs_diff_eq!(
            induced_uncertainty(QuantumDistance::Bures, &rho).unwrap(),
            expected_bures,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            induced_uncertainty(QuantumDistance::Hellinger, &rho).unwrap(),
            expected_bures,
            epsilon = 1e-9
        );
        // Pure states have zero uncertainty under every family.
        for seed in 0..5 {
            let pure = DensityMatrix::random(3, 1, seed).unwrap();
            for spec in all_specs() {
                let v = induced_uncertainty(spec, &pure).unwrap();
                assert!(v.abs() < 1e-7, "{spec:?} gave {v}");
            }
        }
    }

    #[test]
    fn closed_form_contracts() {
        for seed in 0..20 {
            let d = 2 + seed as usize % 4;
            let rho = DensityMatrix::random(d, d, seed).unwrap();
            let spectrum = rho.spectrum().unwrap();
            let lambda = spectrum.clamped_eigenvalues();
            let df = d as f64;

            let hs = induced_uncertainty(QuantumDistance::HilbertSchmidt, &rho).unwrap();
            assert_abs_diff_eq!(hs, 1.0 - rho.purity(), epsilon = 1e-9);

            let bures = induced_uncertainty(QuantumDistance::Bures, &rho).unwrap();
            let tr_sqrt: f64 = lambda.iter().map(|l| l.sqrt()).sum();
            assert_abs_diff_eq!(bures, 2.0 / df.sqrt() * (tr_sqrt - 1.0), epsilon = 1e-9);

            for p in [1.0, 2.0, 3.0] {
                let schatten = induced_uncertainty(QuantumDistance::Schatten { p }, &rho).unwrap();
                let constant = ((df - 1.0).powf(p) + df - 1.0).powf(1.0 / p) / df;
                let sum: f64 = lambda.iter().map(|l| (l - 1.0 / df).abs().powf(p)).sum();
                assert_abs_diff_eq!(schatten, constant - sum.powf(1.0 / p), epsilon = 1e-9);
            }

            for alpha in [0.3, 0.5, 2.0, 5.0] {
                let renyi =
                    induced_uncertainty(QuantumDistance::SandwichedRenyi { alpha }, &rho).unwrap();
                let sum: f64 = lambda
                    .iter()
                    .filter(|&&l| l > 0.0)
                    .map(|l| l.powf(alpha))
                    .sum();
                assert_abs_diff_eq!(renyi, sum.log2() / (1.0 - alpha), epsilon = 1e-8);
            }

            for beta in [0.3, 0.7, 2.0, 3.0] {
                let tsallis =
                    induced_uncertainty(QuantumDistance::QuantumTsallis { beta }, &rho).unwrap();
                let sum: f64 = lambda
                    .iter()
                    .filter(|&&l| l > 0.0)
                    .map(|l| l.powf(beta))
                    .sum();
                assert_abs_diff_eq!(
                    tsallis,
                    df.powf(beta - 1.0) * (1.0 - sum) / (beta - 1.0),
                    epsilon = 1e-8
                );
            }
        }
    }

    #[test]
    fn unitary_invariance_and_the_entrywise_exception() {
        for seed in 0..10 {
            let d = 2 + seed as usize % 3;
            let rho = DensityMatrix::random(d, d, seed).unwrap();
            let w = random_unitary(d, seed + 100);
            let rotated = conjugate(&rho, &w).unwrap();
            for spec in all_specs() {
                let a = induced_uncertainty(spec, &rho).unwrap();
                let b = induced_uncertainty(spec, &rotated).unwrap();
                assert_abs_diff_eq!(a, b, epsilon = 1e-9);
            }
        }
        // Entrywise l1 is basis-dependent: rotating by pi/8 changes it.
        let rho = DensityMatrix::from_real(2, &[0.75, 0.0, 0.0, 0.25]).unwrap();
        let (cos, sin) = (std::f64::consts::FRAC_PI_8.cos(), std::f64::consts::FRAC_PI_8.sin());
        let w = vec![c(cos, 0.0), c(-sin, 0.0), c(sin, 0.0), c(cos, 0.0)];
        let rotated = conjugate(&rho, &w).unwrap();
        let a = induced_uncertainty(QuantumDistance::Entrywise { p: 1.0 }, &rho).unwrap();
        let b = induced_uncertainty(QuantumDistance::Entrywise { p: 1.0 }, &rotated).unwrap();
        assert!((a - b).abs() > 1e-3, "expected a basis-dependence witness, got {a} vs {b}");
        // For p = 2 the entrywise norm is the Frobenius norm and agrees with
        // Schatten-2 everywhere.
        for seed in 0..10 {
            let rho = DensityMatrix::random(3, 3, seed).unwrap();
            let a = induced_uncertainty(QuantumDistance::Entrywise { p: 2.0 }, &rho).unwrap();
            let b = induced_uncertainty(QuantumDistance::Schatten { p: 2.0 }, &rho).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn spectral_majorization_monotonicity() {
        for seed in 0..50 {
            let n = 3;
            let (p, q) = ProbabilityDistribution::random_majorized_pair(n, 4, seed).unwrap();
            let w = random_unitary(n, seed + 999);
            let rho = conjugate(&DensityMatrix::from_diagonal(&p), &w).unwrap();
            let sigma = conjugate(&DensityMatrix::from_diagonal(&q), &w).unwrap();
            for spec in all_specs() {
                let up = induced_uncertainty(spec, &rho).unwrap();
                let uq = induced_uncertainty(spec, &sigma).unwrap();
                assert!(up <= uq + 1e-9, "{spec:?}: {up} > {uq}");
            }
        }
    }

    #[test]
    fn random_density_matrices_are_valid_and_deterministic() {
        let a = DensityMatrix::random(3, 3, 42).unwrap();
        let b = DensityMatrix::random(3, 3, 42).unwrap();
        assert_eq!(a, b);
        let pure = DensityMatrix::random(2, 1, 1).unwrap();
        assert_abs_diff_eq!(
            induced_uncertainty(QuantumDistance::HilbertSchmidt, &pure).unwrap(),
            0.0,
            epsilon = 1e-10
        );
        // Requested rank shows up in the spectrum.
        let rho = DensityMatrix::random(4, 2, 3).unwrap();
        let values = rho.spectrum().unwrap();
        let significant = values
            .eigenvalues()
            .iter()
            .filter(|&&v| v > 1e-10)
            .count();
        assert_eq!(significant, 2);
        assert!(DensityMatrix::random(2, 3, 0).is_err());
        assert!(DensityMatrix::random(2, 0, 0).is_err());
    }

    #[test]
    fn text_format_round_trips() {
        let rho = DensityMatrix::random(3, 2, 77).unwrap();
        let text = format_density_matrix(&rho);
        let back = parse_density_matrix(&text).unwrap();
        assert_eq!(rho, back);
        assert!(parse_density_matrix("").is_err());
        assert!(parse_density_matrix("2\n1:0 0:0\n").is_err());
        assert!(parse_density_matrix("2\n0.5:0 0:0\n0:0 0.5:0\nextra\n").is_err());
        assert!(parse_density_matrix("1\nnope:0\n").is_err());
    }

    #[test]
    fn von_neumann_entropy_matches_spectrum_shannon() {
        let rho = mix(0.5);
        assert_abs_diff_eq!(
            von_neumann_entropy(&rho).unwrap(),
            -(0.75_f64 * 0.75_f64.log2() + 0.25 * 0.25_f64.log2()),
            epsilon = 1e-12
        );
        let pure = DensityMatrix::pure(4, 2).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&pure).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn reference_term_is_unitary_invariant() {
        // Asserted rather than assumed: D(W pure W^H, I/d) is constant.
        let d = 3;
        let mixed = DensityMatrix::maximally_mixed(d);
        let pure = DensityMatrix::pure(d, 0).unwrap();
        for spec in all_specs() {
            let reference = distance(spec, &pure, &mixed).unwrap();
            for seed in 0..5 {
                let w = random_unitary(d, seed);
                let rotated = conjugate(&pure, &w).unwrap();
                let v = distance(spec, &rotated, &mixed).unwrap();
                assert_abs_diff_eq!(v, reference, epsilon = 1e-9);
            }
        }
    }
}
