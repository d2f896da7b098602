//! Finite discrete probability distributions and the majorization order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Inputs may miss exact normalization by this much; they are renormalized.
pub const SUM_TOLERANCE: f64 = 1e-9;
/// Entries below zero by more than this are rejected; smaller dips clamp to 0.
pub const NEGATIVE_TOLERANCE: f64 = 1e-12;
/// Slack when comparing prefix sums in the majorization test.
pub const MAJORIZATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistributionError {
    #[error("distribution needs at least one entry")]
    Empty,
    #[error("entry {index} is negative: {value}")]
    NegativeEntry { index: usize, value: f64 },
    #[error("entries sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("majorized pair generation needs n >= 2 and steps >= 1")]
    InvalidPairRequest,
    #[error("cannot parse probability {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// A validated point on the probability simplex.
///
/// Entries are non-negative, at most 1, and renormalized to sum to 1 in
/// working precision. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    probs: Vec<f64>,
}

impl ProbabilityDistribution {
    /// Validates and renormalizes `values` into a distribution.
    pub fn new(values: &[f64]) -> Result<Self, DistributionError> {
        if values.is_empty() {
            return Err(DistributionError::Empty);
        }
        let mut probs = Vec::with_capacity(values.len());
        for (index, &value) in values.iter().enumerate() {
            if value < -NEGATIVE_TOLERANCE || value.is_nan() {
                return Err(DistributionError::NegativeEntry { index, value });
            }
            probs.push(value.max(0.0));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(DistributionError::NotNormalized { sum });
        }
        for p in &mut probs {
            *p /= sum;
        }
        Ok(Self { probs })
    }

    /// The uniform distribution on `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self, DistributionError> {
        if n == 0 {
            return Err(DistributionError::Empty);
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    /// The certain distribution with all mass on `index`.
    pub fn certain(n: usize, index: usize) -> Result<Self, DistributionError> {
        if n == 0 {
            return Err(DistributionError::Empty);
        }
        if index >= n {
            return Err(DistributionError::IndexOutOfRange { index, n });
        }
        let mut probs = vec![0.0; n];
        probs[index] = 1.0;
        Ok(Self { probs })
    }

    pub fn n(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Comma-separated entries with enough digits to round-trip.
    pub fn to_csv(&self) -> String {
        self.probs
            .iter()
            .map(|p| format!("{p:.17e}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a comma-separated list such as `"0.5,0.3,0.2"`.
    pub fn from_csv_str(text: &str) -> Result<Self, DistributionError> {
        let values = parse_numbers(text.split(','))?;
        Self::new(&values)
    }

    /// Parses a single-column text block, one probability per line.
    pub fn from_lines_str(text: &str) -> Result<Self, DistributionError> {
        let values = parse_numbers(text.lines().filter(|l| !l.trim().is_empty()))?;
        Self::new(&values)
    }

    /// True iff `self` majorizes `other`: sorted-descending prefix sums of
    /// `self` dominate those of `other` within [`MAJORIZATION_TOLERANCE`].
    pub fn majorizes(&self, other: &Self) -> Result<bool, DistributionError> {
        if self.n() != other.n() {
            return Err(DistributionError::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let mut a = self.probs.clone();
        let mut b = other.probs.clone();
        a.sort_unstable_by(|x, y| y.total_cmp(x));
        b.sort_unstable_by(|x, y| y.total_cmp(x));
        let mut prefix_a = 0.0;
        let mut prefix_b = 0.0;
        for (x, y) in a.iter().zip(&b) {
            prefix_a += x;
            prefix_b += y;
            if prefix_a < prefix_b - MAJORIZATION_TOLERANCE {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A uniformly distributed point on the simplex (flat Dirichlet),
    /// deterministic per seed.
    pub fn random(n: usize, seed: u64) -> Result<Self, DistributionError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(n, &mut rng)
    }

    /// Like [`Self::random`], drawing from a caller-owned RNG.
    pub fn random_with<R: Rng>(n: usize, rng: &mut R) -> Result<Self, DistributionError> {
        if n == 0 {
            return Err(DistributionError::Empty);
        }
        // Unit-rate exponentials normalized by their sum sample the flat
        // Dirichlet law on the simplex.
        let mut probs: Vec<f64> = (0..n)
            .map(|_| -(1.0 - rng.gen::<f64>()).ln())
            .collect();
        let sum: f64 = probs.iter().sum();
        if sum <= 0.0 {
            return Self::uniform(n);
        }
        for p in &mut probs {
            *p /= sum;
        }
        Ok(Self { probs })
    }

    /// Returns `(p, q)` with `p.majorizes(q)` guaranteed: `q` is `p` after
    /// `steps` random Robin-Hood transfers (each moves a random fraction of
    /// half the gap from a larger entry to a smaller one).
    pub fn random_majorized_pair(
        n: usize,
        steps: usize,
        seed: u64,
    ) -> Result<(Self, Self), DistributionError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_majorized_pair_with(n, steps, &mut rng)
    }

    /// Like [`Self::random_majorized_pair`], drawing from a caller-owned RNG.
    pub fn random_majorized_pair_with<R: Rng>(
        n: usize,
        steps: usize,
        rng: &mut R,
    ) -> Result<(Self, Self), DistributionError> {
        if n < 2 || steps == 0 {
            return Err(DistributionError::InvalidPairRequest);
        }
        let p = Self::random_with(n, rng)?;
        let mut q = p.probs.clone();
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let (hi, lo) = if q[i] >= q[j] { (i, j) } else { (j, i) };
            let delta = rng.gen::<f64>() * (q[hi] - q[lo]) / 2.0;
            q[hi] -= delta;
            q[lo] += delta;
        }
        Ok((p, Self { probs: q }))
    }
}

fn parse_numbers<'a, I>(parts: I) -> Result<Vec<f64>, DistributionError>
where
    I: Iterator<Item = &'a str>,
{
    let mut values = Vec::new();
    for part in parts {
        let token = part.trim();
        if token.is_empty() {
            return Err(DistributionError::Parse {
                text: part.to_string(),
                reason: "empty field".to_string(),
            });
        }
        let value = token.parse::<f64>().map_err(|e| DistributionError::Parse {
            text: token.to_string(),
            reason: e.to_string(),
        })?;
        values.push(value);
    }
    Ok(values)
}
