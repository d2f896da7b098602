//! Uncertainty measures induced by statistical divergences.
//!
//! Every divergence `D` between probability distributions induces two
//! uncertainty measures for a distribution `P` on `n` outcomes, by comparing
//! `P` against the two extreme points of the simplex — a certain distribution
//! `C` (one entry equal to 1) and the uniform distribution `U`:
//!
//! ```text
//! up(P)   = D(C ‖ U) − D(P ‖ U)
//! down(P) = D(U ‖ C) − D(U ‖ P)
//! ```
//!
//! Both vanish at certain distributions, peak at the uniform distribution,
//! and are Schur-concave whenever `D(· ‖ U)` (resp. `D(U ‖ ·)`) is
//! Schur-convex — which holds for every f-divergence. Plugging in the usual
//! divergences recovers the familiar entropies (Shannon from Kullback–Leibler,
//! Rényi, Tsallis, Hartley, min-entropy, …) and produces less familiar ones
//! (a Jensen–Shannon uncertainty, an "absolute" uncertainty from total
//! variation, a Hellinger uncertainty).
//!
//! The crate provides:
//!
//! - [`distributions`]: validated points on the simplex, majorization, and
//!   seeded random generation (including majorized pairs for property tests);
//! - [`divergences`]: Kullback–Leibler, Rényi, Jensen–Shannon, Tsallis,
//!   Hellinger, total variation, and generic f-divergences, with explicit
//!   zero/limit/infinity conventions;
//! - [`uncertainty`]: the `up`/`down` constructors, the closed forms they
//!   induce, and per-measure maxima;
//! - [`quantum`]: the same construction for density matrices (mixedness
//!   measures), backed by a self-contained complex Jacobi eigensolver;
//! - [`verify`]: executable property suites (Schur-concavity, faithfulness,
//!   closed-form/construction agreement, quantum–classical reduction) plus
//!   regression witnesses for rejected closed-form variants;
//! - [`sweep`]: deterministic CSV parameter sweeps of the curve families.
//!
//! The generic constructors are the ground truth: every closed form in
//! [`uncertainty`] is tested to agree with its defining difference of
//! divergences.

pub mod distributions;
pub mod divergences;
pub mod format;
pub mod quantum;
pub mod sweep;
pub mod uncertainty;
pub mod verify;

/// Entries at or below this threshold count as zero when measuring support.
pub(crate) const SUPPORT_EPS: f64 = 1e-12;

pub use distributions::{DistributionError, ProbabilityDistribution};
pub use divergences::{ConvexGenerator, Divergence, DivergenceError, DivergenceValue};
pub use quantum::{DensityMatrix, QuantumDistance, QuantumError, Spectrum};
pub use uncertainty::{Direction, Measure, UncertaintyError};
