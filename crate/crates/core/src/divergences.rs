//! Classical statistical divergences with explicit zero and limit conventions.
//!
//! All logarithms are base 2. Conventions used throughout:
//!
//! - `0·log 0 := 0` and `0^a := 0` in power sums (terms with `p_i = 0` drop);
//! - a term with `p_i > 0` but `q_i = 0` diverges where the algebra says so
//!   (KL, Rényi with order > 1, Tsallis with order > 1): the result is then
//!   `+∞`, carried as a value, never as an exception or a NaN.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::distributions::ProbabilityDistribution;
use crate::SUPPORT_EPS;

/// `f(1)` must vanish within this for a convex generator.
pub const GENERATOR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DivergenceError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("Renyi order must be >= 0, got {0}")]
    NegativeOrder(f64),
    #[error("convex generator must satisfy f(1) = 0, got f(1) = {0:e}")]
    GeneratorNotNormalized(f64),
}

/// A divergence evaluation: finite non-negative or `+∞`, never NaN.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DivergenceValue(f64);

impl DivergenceValue {
    pub const INFINITE: Self = Self(f64::INFINITY);

    fn from_raw(value: f64) -> Self {
        debug_assert!(!value.is_nan());
        // Absorb summation noise just below zero.
        if value > -1e-12 && value < 0.0 {
            Self(0.0)
        } else {
            Self(value)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl fmt::Display for DivergenceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Convex generator for an f-divergence: `f` with `f(1) = 0`, plus the slope
/// at infinity `lim f(t)/t` used to weigh mass where `q_i = 0` (may be `+∞`).
///
/// `f` must return the continuous extension at `t = 0`.
#[derive(Clone)]
pub struct ConvexGenerator {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    slope_at_infinity: f64,
}

impl ConvexGenerator {
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        slope_at_infinity: f64,
    ) -> Result<Self, DivergenceError> {
        let at_one = f(1.0);
        if at_one.is_nan() || at_one.abs() > GENERATOR_TOLERANCE {
            return Err(DivergenceError::GeneratorNotNormalized(at_one));
        }
        Ok(Self {
            f: Arc::new(f),
            slope_at_infinity,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn slope_at_infinity(&self) -> f64 {
        self.slope_at_infinity
    }

    /// `f(t) = t·log2 t`, generating Kullback–Leibler.
    pub fn kl() -> Self {
        Self::new(|t| if t > 0.0 { t * t.log2() } else { 0.0 }, f64::INFINITY).unwrap()
    }

    /// `f(t) = ½|t − 1|`, generating total variation.
    pub fn total_variation() -> Self {
        Self::new(|t| 0.5 * (t - 1.0).abs(), 0.5).unwrap()
    }

    /// `f(t) = (√t − 1)²`, generating the (squared) Hellinger distance.
    pub fn hellinger() -> Self {
        Self::new(|t| (t.sqrt() - 1.0).powi(2), 1.0).unwrap()
    }
}

impl fmt::Debug for ConvexGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvexGenerator")
            .field("slope_at_infinity", &self.slope_at_infinity)
            .finish_non_exhaustive()
    }
}

/// Tagged selector for a divergence family.
#[derive(Debug, Clone)]
pub enum Divergence {
    Kl,
    Renyi { alpha: f64 },
    JensenShannon,
    Tsallis { beta: f64 },
    Hellinger,
    TotalVariation,
    GenericF(ConvexGenerator),
}

impl Divergence {
    /// Evaluates `D(p ‖ q)` for this family.
    pub fn evaluate(
        &self,
        p: &ProbabilityDistribution,
        q: &ProbabilityDistribution,
    ) -> Result<DivergenceValue, DivergenceError> {
        match self {
            Divergence::Kl => kl(p, q),
            Divergence::Renyi { alpha } => renyi(*alpha, p, q),
            Divergence::JensenShannon => jensen_shannon(p, q),
            Divergence::Tsallis { beta } => tsallis(*beta, p, q),
            Divergence::Hellinger => hellinger(p, q),
            Divergence::TotalVariation => total_variation(p, q),
            Divergence::GenericF(gen) => f_divergence(gen, p, q),
        }
    }
}

fn check_dims(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<(), DivergenceError> {
    if p.n() != q.n() {
        return Err(DivergenceError::DimensionMismatch {
            left: p.n(),
            right: q.n(),
        });
    }
    Ok(())
}

/// Kullback–Leibler divergence `Σ p_i log2(p_i/q_i)` in bits.
pub fn kl(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<DivergenceValue, DivergenceError> {
    check_dims(p, q)?;
    let mut acc = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(DivergenceValue::INFINITE);
        }
        acc += pi * (pi / qi).log2();
    }
    Ok(DivergenceValue::from_raw(acc))
}

/// Rényi divergence of order `alpha >= 0`:
/// `(1/(α−1)) log2 Σ p_i^α q_i^(1−α)`, with the α ∈ {0, 1, ∞} limits.
pub fn renyi(
    alpha: f64,
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<DivergenceValue, DivergenceError> {
    check_dims(p, q)?;
    if alpha.is_nan() || alpha < 0.0 {
        return Err(DivergenceError::NegativeOrder(alpha));
    }
    if alpha == 1.0 {
        return kl(p, q);
    }
    if alpha == 0.0 {
        // −log2 of the q-mass of p's support.
        let mass: f64 = p
            .probs()
            .iter()
            .zip(q.probs())
            .filter(|(&pi, _)| pi > SUPPORT_EPS)
            .map(|(_, &qi)| qi)
            .sum();
        if mass <= 0.0 {
            return Ok(DivergenceValue::INFINITE);
        }
        return Ok(DivergenceValue::from_raw(-mass.log2()));
    }
    if alpha == f64::INFINITY {
        let mut max_ratio = 0.0_f64;
        for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
            if pi == 0.0 {
                continue;
            }
            if qi == 0.0 {
                return Ok(DivergenceValue::INFINITE);
            }
            max_ratio = max_ratio.max(pi / qi);
        }
        return Ok(DivergenceValue::from_raw(max_ratio.log2()));
    }
    let mut sum = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            if alpha > 1.0 {
                return Ok(DivergenceValue::INFINITE);
            }
            continue;
        }
        sum += pi.powf(alpha) * qi.powf(1.0 - alpha);
    }
    if sum == 0.0 {
        return Ok(DivergenceValue::INFINITE);
    }
    Ok(DivergenceValue::from_raw(sum.log2() / (alpha - 1.0)))
}

/// Jensen–Shannon divergence `KL(p‖m) + KL(q‖m)` with `m = (p+q)/2`.
///
/// No ½ prefactor, so the range is `[0, 2]` bits.
pub fn jensen_shannon(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<DivergenceValue, DivergenceError> {
    check_dims(p, q)?;
    let mut acc = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        let mi = 0.5 * (pi + qi);
        if pi > 0.0 {
            acc += pi * (pi / mi).log2();
        }
        if qi > 0.0 {
            acc += qi * (qi / mi).log2();
        }
    }
    Ok(DivergenceValue::from_raw(acc))
}

/// Tsallis divergence `(Σ p_i^β q_i^(1−β) − 1)/(β−1)`; the β = 1 limit is
/// Kullback–Leibler (converted to bits).
pub fn tsallis(
    beta: f64,
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<DivergenceValue, DivergenceError> {
    check_dims(p, q)?;
    if beta == 1.0 {
        return kl(p, q);
    }
    let mut sum = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            if beta > 1.0 {
                return Ok(DivergenceValue::INFINITE);
            }
            continue;
        }
        sum += pi.powf(beta) * qi.powf(1.0 - beta);
    }
    if sum.is_infinite() {
        return Ok(DivergenceValue::INFINITE);
    }
    Ok(DivergenceValue::from_raw((sum - 1.0) / (beta - 1.0)))
}

/// Squared Hellinger distance `Σ (√p_i − √q_i)²`, in `[0, 2]`.
pub fn hellinger(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<DivergenceValue, DivergenceError> {
    check_dims(p, q)?;
    let acc = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| (pi.sqrt() - qi.sqrt()).powi(2))
        .sum();
    Ok(DivergenceValue::from_raw(acc))
}

/// Total variation distance `½ Σ |p_i − q_i|`, in `[0, 1]`.
pub fn total_variation(
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<DivergenceValue, DivergenceError> {
    check_dims(p, q)?;
    let acc: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| (pi - qi).abs())
        .sum();
    Ok(DivergenceValue::from_raw(0.5 * acc))
}

/// Generic f-divergence `Σ q_i f(p_i/q_i)`.
///
/// Mass where `q_i = 0 < p_i` contributes `p_i · slope_at_infinity`.
pub fn f_divergence(
    gen: &ConvexGenerator,
    p: &ProbabilityDistribution,
    q: &ProbabilityDistribution,
) -> Result<DivergenceValue, DivergenceError> {
    check_dims(p, q)?;
    let mut acc = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if qi == 0.0 {
            if pi > 0.0 {
                acc += pi * gen.slope_at_infinity();
                if acc.is_infinite() {
                    return Ok(DivergenceValue::INFINITE);
                }
            }
        } else {
            acc += qi * gen.eval(pi / qi);
        }
    }
    if acc.is_infinite() {
        return Ok(DivergenceValue::INFINITE);
    }
    Ok(DivergenceValue::from_raw(acc))
}
