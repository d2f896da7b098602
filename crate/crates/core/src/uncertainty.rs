//! Uncertainty measures induced by divergences.
//!
//! The two constructors compare a distribution against the simplex extremes
//! (certain distribution `C`, uniform distribution `U`):
//!
//! ```text
//! u_up(D, P)   = D(C ‖ U) − D(P ‖ U)
//! u_down(D, P) = D(U ‖ C) − D(U ‖ P)
//! ```
//!
//! These are the ground truth. [`Measure::closed_form`] provides the algebraic
//! shortcut each standard divergence induces, and must agree with the
//! constructor it came from (see [`Measure::generic_form`] and the `verify`
//! suites). The reference `C` is fixed to all mass on index 0; permutation
//! symmetry of every supported divergence against `U` makes the choice
//! immaterial, which the tests assert rather than assume.

use thiserror::Error;

use crate::distributions::{DistributionError, ProbabilityDistribution};
use crate::divergences::{Divergence, DivergenceError};
use crate::SUPPORT_EPS;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UncertaintyError {
    #[error("reference divergence is infinite for this divergence family")]
    InfiniteReference,
    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),
    #[error(transparent)]
    Divergence(#[from] DivergenceError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

/// Which constructor a measure comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// `D(C ‖ U) − D(P ‖ U)`: distance lost toward the uniform distribution.
pub fn u_up(spec: &Divergence, p: &ProbabilityDistribution) -> Result<f64, UncertaintyError> {
    let n = p.n();
    let certain = ProbabilityDistribution::certain(n, 0)?;
    let uniform = ProbabilityDistribution::uniform(n)?;
    let reference = spec.evaluate(&certain, &uniform)?;
    if !reference.is_finite() {
        return Err(UncertaintyError::InfiniteReference);
    }
    let at_p = spec.evaluate(p, &uniform)?;
    if !at_p.is_finite() {
        return Err(UncertaintyError::InfiniteReference);
    }
    Ok(reference.value() - at_p.value())
}

/// `D(U ‖ C) − D(U ‖ P)`: the reversed-argument variant.
///
/// Finite only when `D(U ‖ C)` is: Rényi and Tsallis require order in (0, 1).
pub fn u_down(spec: &Divergence, p: &ProbabilityDistribution) -> Result<f64, UncertaintyError> {
    match spec {
        Divergence::Renyi { alpha } if !(*alpha > 0.0 && *alpha < 1.0) => {
            return Err(UncertaintyError::UnsupportedOrder(format!(
                "u_down with Renyi needs alpha in (0,1), got {alpha}"
            )));
        }
        Divergence::Tsallis { beta } if !(*beta > 0.0 && *beta < 1.0) => {
            return Err(UncertaintyError::UnsupportedOrder(format!(
                "u_down with Tsallis needs beta in (0,1), got {beta}"
            )));
        }
        _ => {}
    }
    let n = p.n();
    let certain = ProbabilityDistribution::certain(n, 0)?;
    let uniform = ProbabilityDistribution::uniform(n)?;
    let reference = spec.evaluate(&uniform, &certain)?;
    if !reference.is_finite() {
        return Err(UncertaintyError::InfiniteReference);
    }
    let at_p = spec.evaluate(&uniform, p)?;
    if !at_p.is_finite() {
        return Err(UncertaintyError::InfiniteReference);
    }
    Ok(reference.value() - at_p.value())
}

/// A closed-form uncertainty measure together with the divergence and
/// direction that induce it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    /// `−Σ p log2 p`, from KL upward.
    Shannon,
    /// `(1/(1−α)) log2 Σ p^α`, from Rényi(α) upward; α ∈ {0, 1, ∞} dispatch
    /// to Hartley, Shannon, and min-entropy.
    Renyi { alpha: f64 },
    /// `log2 |supp p|`, the α = 0 Rényi case.
    Hartley,
    /// `2 log2 Σ √p`, the α = ½ Rényi case.
    Bhattacharyya,
    /// `−log2 max p`, the α = ∞ Rényi case.
    MinEntropy,
    /// `(1/γ) log2 Σ p^γ` for γ ∈ (0, 1), from Rényi(1−γ) downward.
    DownRenyi { gamma: f64 },
    /// From Jensen–Shannon (either direction; it is symmetric).
    JensenShannonU,
    /// `n^(β−1) (1 − Σ p^β)/(β−1)`, from Tsallis(β) upward.
    TsallisU { beta: f64 },
    /// `n^(−β) (1 − Σ p^(1−β))/(β−1)` for β ∈ (0, 1), from Tsallis(β) downward.
    DownTsallis { beta: f64 },
    /// `(2/√n)(Σ √p − 1)`, from the Hellinger distance.
    HellingerU,
    /// `1 − 1/n − ½ Σ |1/n − p|`, from total variation.
    AbsoluteU,
}

impl Measure {
    /// The divergence family and direction whose construction induces this
    /// measure.
    pub fn generator(&self) -> (Divergence, Direction) {
        match *self {
            Measure::Shannon => (Divergence::Kl, Direction::Up),
            Measure::Renyi { alpha } => (Divergence::Renyi { alpha }, Direction::Up),
            Measure::Hartley => (Divergence::Renyi { alpha: 0.0 }, Direction::Up),
            Measure::Bhattacharyya => (Divergence::Renyi { alpha: 0.5 }, Direction::Up),
            Measure::MinEntropy => (
                Divergence::Renyi {
                    alpha: f64::INFINITY,
                },
                Direction::Up,
            ),
            Measure::DownRenyi { gamma } => {
                (Divergence::Renyi { alpha: 1.0 - gamma }, Direction::Down)
            }
            Measure::JensenShannonU => (Divergence::JensenShannon, Direction::Up),
            Measure::TsallisU { beta } => (Divergence::Tsallis { beta }, Direction::Up),
            Measure::DownTsallis { beta } => (Divergence::Tsallis { beta }, Direction::Down),
            Measure::HellingerU => (Divergence::Hellinger, Direction::Up),
            Measure::AbsoluteU => (Divergence::TotalVariation, Direction::Up),
        }
    }

    /// Evaluates the measure through its defining construction rather than
    /// the closed form. This is the oracle the closed forms are tested
    /// against.
    pub fn generic_form(&self, p: &ProbabilityDistribution) -> Result<f64, UncertaintyError> {
        let (divergence, direction) = self.generator();
        match direction {
            Direction::Up => u_up(&divergence, p),
            Direction::Down => u_down(&divergence, p),
        }
    }

    /// Evaluates the closed form, all logs base 2.
    pub fn closed_form(&self, p: &ProbabilityDistribution) -> Result<f64, UncertaintyError> {
        let probs = p.probs();
        let n = p.n() as f64;
        match *self {
            Measure::Shannon => Ok(shannon(probs)),
            Measure::Renyi { alpha } => {
                if alpha.is_nan() || alpha < 0.0 {
                    return Err(UncertaintyError::UnsupportedOrder(format!(
                        "Renyi needs alpha >= 0, got {alpha}"
                    )));
                }
                if alpha == 0.0 {
                    return Measure::Hartley.closed_form(p);
                }
                if alpha == 1.0 {
                    return Ok(shannon(probs));
                }
                if alpha == f64::INFINITY {
                    return Measure::MinEntropy.closed_form(p);
                }
                let sum: f64 = probs.iter().filter(|&&x| x > 0.0).map(|x| x.powf(alpha)).sum();
                Ok(sum.log2() / (1.0 - alpha))
            }
            Measure::Hartley => {
                let support = probs.iter().filter(|&&x| x > SUPPORT_EPS).count();
                Ok((support as f64).log2())
            }
            Measure::Bhattacharyya => {
                let sum: f64 = probs.iter().map(|x| x.sqrt()).sum();
                Ok(2.0 * sum.log2())
            }
            Measure::MinEntropy => {
                let max = probs.iter().fold(0.0_f64, |m, &x| m.max(x));
                Ok(-max.log2())
            }
            Measure::DownRenyi { gamma } => {
                if !(gamma > 0.0 && gamma < 1.0) {
                    return Err(UncertaintyError::UnsupportedOrder(format!(
                        "DownRenyi needs gamma in (0,1), got {gamma}"
                    )));
                }
                let sum: f64 = probs.iter().filter(|&&x| x > 0.0).map(|x| x.powf(gamma)).sum();
                Ok(sum.log2() / gamma)
            }
            Measure::JensenShannonU => {
                let mut acc = -((n + 1.0) / n) * (n + 1.0).log2();
                for &x in probs {
                    if x > 0.0 {
                        acc -= x * x.log2();
                    }
                    acc += (n * x + 1.0) / n * (n * x + 1.0).log2();
                }
                Ok(acc)
            }
            Measure::TsallisU { beta } => {
                if beta == 1.0 {
                    return Ok(shannon(probs));
                }
                let sum: f64 = probs.iter().filter(|&&x| x > 0.0).map(|x| x.powf(beta)).sum();
                Ok(n.powf(beta - 1.0) * (1.0 - sum) / (beta - 1.0))
            }
            Measure::DownTsallis { beta } => {
                if !(beta > 0.0 && beta < 1.0) {
                    return Err(UncertaintyError::UnsupportedOrder(format!(
                        "DownTsallis needs beta in (0,1), got {beta}"
                    )));
                }
                let sum: f64 = probs
                    .iter()
                    .filter(|&&x| x > 0.0)
                    .map(|x| x.powf(1.0 - beta))
                    .sum();
                Ok(n.powf(-beta) * (1.0 - sum) / (beta - 1.0))
            }
            Measure::HellingerU => {
                let sum: f64 = probs.iter().map(|x| x.sqrt()).sum();
                Ok(2.0 / n.sqrt() * (sum - 1.0))
            }
            Measure::AbsoluteU => {
                let inv = 1.0 / n;
                let sum: f64 = probs.iter().map(|x| (inv - x).abs()).sum();
                Ok(1.0 - inv - 0.5 * sum)
            }
        }
    }

    /// The measure's maximum on `n` outcomes, attained at the uniform
    /// distribution. Used to normalize sweep columns.
    pub fn max_value(&self, n: usize) -> Result<f64, UncertaintyError> {
        self.closed_form(&ProbabilityDistribution::uniform(n)?)
    }

    /// Short stable label (used for report names and CSV columns).
    pub fn label(&self) -> String {
        match *self {
            Measure::Shannon => "shannon".to_string(),
            Measure::Renyi { alpha } => format!("renyi({alpha})"),
            Measure::Hartley => "hartley".to_string(),
            Measure::Bhattacharyya => "bhattacharyya".to_string(),
            Measure::MinEntropy => "min-entropy".to_string(),
            Measure::DownRenyi { gamma } => format!("down-renyi({gamma})"),
            Measure::JensenShannonU => "js".to_string(),
            Measure::TsallisU { beta } => format!("tsallis({beta})"),
            Measure::DownTsallis { beta } => format!("down-tsallis({beta})"),
            Measure::HellingerU => "hellinger".to_string(),
            Measure::AbsoluteU => "absolute".to_string(),
        }
    }
}

fn shannon(probs: &[f64]) -> f64 {
    let acc: f64 = probs
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.log2())
        .sum();
    -acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::ProbabilityDistribution as Dist;
    use approx::assert_abs_diff_eq;

    fn d(values: &[f64]) -> Dist {
        Dist::new(values).unwrap()
    }

    #[test]
    fn u_up_examples() {
        let u = d(&[0.5, 0.5]);
        assert_abs_diff_eq!(u_up(&Divergence::Kl, &u).unwrap(), 1.0, epsilon = 1e-15);
        let p = d(&[0.75, 0.25]);
        assert_abs_diff_eq!(
            u_up(&Divergence::Kl, &p).unwrap(),
            0.811278,
            epsilon = 1e-6
        );
        let c = d(&[1.0, 0.0]);
        assert_abs_diff_eq!(
            u_up(&Divergence::TotalVariation, &c).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn u_down_examples() {
        let p = d(&[0.75, 0.25]);
        // (1/gamma) log2 sum p^gamma at gamma = 0.5.
        let expected = 2.0 * (0.75_f64.sqrt() + 0.25_f64.sqrt()).log2();
        assert_abs_diff_eq!(
            u_down(&Divergence::Renyi { alpha: 0.5 }, &p).unwrap(),
            expected,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(expected, 0.8999686269529916, epsilon = 1e-15);
        // TV is symmetric: both directions agree.
        for seed in 0..20 {
            let q = Dist::random(3, seed).unwrap();
            assert_abs_diff_eq!(
                u_down(&Divergence::TotalVariation, &q).unwrap(),
                u_up(&Divergence::TotalVariation, &q).unwrap(),
                epsilon = 1e-14
            );
        }
        assert!(matches!(
            u_down(&Divergence::Renyi { alpha: 2.0 }, &p),
            Err(UncertaintyError::UnsupportedOrder(_))
        ));
        assert!(matches!(
            u_down(&Divergence::Tsallis { beta: 2.0 }, &p),
            Err(UncertaintyError::UnsupportedOrder(_))
        ));
        // KL's reversed reference diverges.
        assert!(matches!(
            u_down(&Divergence::Kl, &p),
            Err(UncertaintyError::InfiniteReference)
        ));
    }

    #[test]
    fn closed_form_examples() {
        let p = d(&[0.75, 0.25]);
        assert_abs_diff_eq!(
            Measure::AbsoluteU.closed_form(&p).unwrap(),
            0.25,
            epsilon = 1e-15
        );
        let u = d(&[0.5, 0.5]);
        assert_abs_diff_eq!(
            Measure::JensenShannonU.closed_form(&u).unwrap(),
            3.0 - 1.5 * 3.0_f64.log2(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            Measure::HellingerU.closed_form(&p).unwrap(),
            2.0_f64.sqrt() * (0.75_f64.sqrt() + 0.5 - 1.0),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            Measure::HellingerU.closed_form(&p).unwrap(),
            0.517638,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            Measure::TsallisU { beta: 2.0 }.closed_form(&p).unwrap(),
            0.75,
            epsilon = 1e-15
        );
        let c = d(&[1.0, 0.0]);
        assert_abs_diff_eq!(
            Measure::MinEntropy.closed_form(&c).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            Measure::Shannon.closed_form(&p).unwrap(),
            0.811278,
            epsilon = 1e-6
        );
    }

    #[test]
    fn max_value_examples() {
        assert_abs_diff_eq!(
            Measure::Shannon.max_value(8).unwrap(),
            3.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            Measure::AbsoluteU.max_value(2).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            Measure::HellingerU.max_value(2).unwrap(),
            2.0 - 2.0_f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn renyi_special_orders_dispatch() {
        let p = d(&[0.6, 0.3, 0.1]);
        assert_eq!(
            Measure::Renyi { alpha: 0.0 }.closed_form(&p).unwrap(),
            Measure::Hartley.closed_form(&p).unwrap()
        );
        assert_eq!(
            Measure::Renyi { alpha: 1.0 }.closed_form(&p).unwrap(),
            Measure::Shannon.closed_form(&p).unwrap()
        );
        assert_eq!(
            Measure::Renyi {
                alpha: f64::INFINITY
            }
            .closed_form(&p)
            .unwrap(),
            Measure::MinEntropy.closed_form(&p).unwrap()
        );
        assert_abs_diff_eq!(
            Measure::Renyi { alpha: 0.5 }.closed_form(&p).unwrap(),
            Measure::Bhattacharyya.closed_form(&p).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn down_renyi_is_rescaled_renyi() {
        for seed in 0..100 {
            let p = Dist::random(4, seed).unwrap();
            for gamma in [0.3, 0.5, 0.7] {
                let down = Measure::DownRenyi { gamma }.closed_form(&p).unwrap();
                let up = Measure::Renyi { alpha: gamma }.closed_form(&p).unwrap();
                assert_abs_diff_eq!(down, (1.0 - gamma) / gamma * up, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn down_tsallis_literal_identity() {
        for seed in 0..100 {
            let p = Dist::random(5, seed).unwrap();
            let n = p.n() as f64;
            for beta in [0.3, 0.7] {
                let v = Measure::DownTsallis { beta }.closed_form(&p).unwrap();
                let sum: f64 = p.probs().iter().map(|x| x.powf(1.0 - beta)).sum();
                assert_abs_diff_eq!(
                    v * (beta - 1.0) * n.powf(beta),
                    1.0 - sum,
                    epsilon = 1e-12
                );
            }
        }
        for beta in [0.3, 0.7] {
            for k in 0..3 {
                let c = Dist::certain(3, k).unwrap();
                let v = Measure::DownTsallis { beta }.closed_form(&c).unwrap();
                assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn not_expandable_witnesses() {
        let two = d(&[0.5, 0.5]);
        let three = d(&[0.5, 0.5, 0.0]);
        let js2 = Measure::JensenShannonU.closed_form(&two).unwrap();
        let js3 = Measure::JensenShannonU.closed_form(&three).unwrap();
        assert!((js2 - js3).abs() > 1e-3, "{js2} vs {js3}");
        let abs2 = Measure::AbsoluteU.closed_form(&two).unwrap();
        let abs3 = Measure::AbsoluteU.closed_form(&three).unwrap();
        assert!((abs2 - abs3).abs() > 1e-3, "{abs2} vs {abs3}");
    }

    #[test]
    fn absolute_kink_slopes_at_half() {
        let h = 1e-6;
        let at = |x: f64| Measure::AbsoluteU.closed_form(&d(&[x, 1.0 - x])).unwrap();
        let left = (at(0.5) - at(0.5 - h)) / h;
        let right = (at(0.5 + h) - at(0.5)) / h;
        assert_abs_diff_eq!(left, 1.0, epsilon = 1e-4);
        assert_abs_diff_eq!(right, -1.0, epsilon = 1e-4);
    }

    #[test]
    fn permutation_invariance() {
        let p = d(&[0.5, 0.3, 0.2]);
        let q = d(&[0.2, 0.5, 0.3]);
        for m in [
            Measure::Shannon,
            Measure::Renyi { alpha: 2.0 },
            Measure::Hartley,
            Measure::Bhattacharyya,
            Measure::MinEntropy,
            Measure::DownRenyi { gamma: 0.5 },
            Measure::JensenShannonU,
            Measure::TsallisU { beta: 2.0 },
            Measure::DownTsallis { beta: 0.3 },
            Measure::HellingerU,
            Measure::AbsoluteU,
        ] {
            let a = m.closed_form(&p).unwrap();
            let b = m.closed_form(&q).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn reference_index_does_not_matter() {
        // The construction fixes C = certain(n, 0); any other index gives the
        // same value for every supported divergence.
        let p = d(&[0.6, 0.3, 0.1]);
        let n = p.n();
        let uniform = Dist::uniform(n).unwrap();
        for div in [
            Divergence::Kl,
            Divergence::Renyi { alpha: 0.5 },
            Divergence::Renyi { alpha: 2.0 },
            Divergence::JensenShannon,
            Divergence::Tsallis { beta: 0.5 },
            Divergence::Tsallis { beta: 2.0 },
            Divergence::Hellinger,
            Divergence::TotalVariation,
        ] {
            let base = div
                .evaluate(&Dist::certain(n, 0).unwrap(), &uniform)
                .unwrap()
                .value();
            for k in 1..n {
                let other = div
                    .evaluate(&Dist::certain(n, k).unwrap(), &uniform)
                    .unwrap()
                    .value();
                assert_abs_diff_eq!(base, other, epsilon = 1e-14);
            }
            let down_base = div
                .evaluate(&uniform, &Dist::certain(n, 0).unwrap())
                .unwrap()
                .value();
            for k in 1..n {
                let other = div
                    .evaluate(&uniform, &Dist::certain(n, k).unwrap())
                    .unwrap()
                    .value();
                assert!(
                    (down_base.is_infinite() && other.is_infinite())
                        || (down_base - other).abs() <= 1e-14
                );
            }
        }
    }

    #[test]
    fn closed_forms_match_generic_construction() {
        let measures = [
            Measure::Shannon,
            Measure::Renyi { alpha: 0.3 },
            Measure::Renyi { alpha: 2.0 },
            Measure::Hartley,
            Measure::Bhattacharyya,
            Measure::MinEntropy,
            Measure::DownRenyi { gamma: 0.7 },
            Measure::JensenShannonU,
            Measure::TsallisU { beta: 0.5 },
            Measure::TsallisU { beta: 3.0 },
            Measure::DownTsallis { beta: 0.3 },
            Measure::HellingerU,
            Measure::AbsoluteU,
        ];
        for seed in 0..200 {
            let n = 2 + (seed as usize % 5);
            let p = Dist::random(n, seed).unwrap();
            for m in &measures {
                let closed = m.closed_form(&p).unwrap();
                let generic = m.generic_form(&p).unwrap();
                assert_abs_diff_eq!(closed, generic, epsilon = 1e-10);
            }
        }
    }
}
