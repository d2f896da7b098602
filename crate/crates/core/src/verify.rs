//! Executable property suites certifying the uncertainty measures.
//!
//! A valid uncertainty measure must be non-negative, vanish exactly on
//! certain distributions, peak at the uniform distribution, and be
//! Schur-concave. Each check here samples deterministically per seed and
//! returns a [`PropertyReport`] whose failures carry re-runnable serialized
//! inputs.
//!
//! The [`variants`] module keeps closed-form candidates that look plausible
//! but do **not** satisfy the defining construction; the errata suite passes
//! exactly when those variants keep failing the oracle.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::distributions::ProbabilityDistribution;
use crate::quantum::{self, DensityMatrix, QuantumDistance};
use crate::uncertainty::Measure;

/// Absolute slack for closed-form algebra on small n.
pub const SCHUR_TOLERANCE: f64 = 1e-12;
/// Slack for closed form vs. generic construction.
pub const ORACLE_TOLERANCE: f64 = 1e-10;
/// Slack for anything passing through the eigensolver.
pub const QUANTUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Failure {
    /// Serialized input, sufficient to re-run the case by hand.
    pub input: String,
    pub observed: f64,
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub property: String,
    pub trials: usize,
    pub failures: Vec<Failure>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PROPERTY {} trials={} failures={}",
            self.property,
            self.trials,
            self.failures.len()
        )?;
        for failure in &self.failures {
            write!(
                f,
                "\n  FAIL input={} observed={:.17e} bound={:.17e}",
                failure.input, failure.observed, failure.bound
            )?;
        }
        Ok(())
    }
}

/// Schur-concavity on random majorized pairs: `P > Q` (majorization) must
/// give `U(P) <= U(Q) + tol`.
pub fn check_schur_concavity(
    measure: &Measure,
    n: usize,
    trials: usize,
    seed: u64,
) -> PropertyReport {
    let eval = |p: &ProbabilityDistribution| measure.closed_form(p).expect("measure in range");
    check_schur_concavity_of(&format!("schur-concavity/{}/n={n}", measure.label()), eval, n, trials, seed)
}

/// Generic version used to demonstrate that the check can fail (e.g. on the
/// Schur-convex fixture `U(p) = p_1`).
pub fn check_schur_concavity_of(
    property: &str,
    eval: impl Fn(&ProbabilityDistribution) -> f64,
    n: usize,
    trials: usize,
    seed: u64,
) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let steps = 1 + trial % 8;
        let (p, q) = ProbabilityDistribution::random_majorized_pair_with(n, steps, &mut rng)
            .expect("n >= 2, steps >= 1");
        let up = eval(&p);
        let uq = eval(&q);
        if up > uq + SCHUR_TOLERANCE {
            failures.push(Failure {
                input: format!("P={};Q={}", p.to_csv(), q.to_csv()),
                observed: up - uq,
                bound: SCHUR_TOLERANCE,
            });
        }
    }
    PropertyReport {
        property: property.to_string(),
        trials,
        failures,
    }
}

/// Faithfulness: zero at every certain distribution, non-negative, and
/// maximal at the uniform distribution.
pub fn check_faithfulness(measure: &Measure, n: usize, trials: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for k in 0..n {
        let certain = ProbabilityDistribution::certain(n, k).unwrap();
        let value = measure.closed_form(&certain).expect("measure in range");
        if value.abs() > SCHUR_TOLERANCE {
            failures.push(Failure {
                input: format!("certain({n},{k})"),
                observed: value,
                bound: SCHUR_TOLERANCE,
            });
        }
    }
    let max = measure
        .max_value(n)
        .expect("uniform value exists for measures in range");
    for _ in 0..trials {
        let p = ProbabilityDistribution::random_with(n, &mut rng).unwrap();
        let value = measure.closed_form(&p).expect("measure in range");
        if value < -SCHUR_TOLERANCE {
            failures.push(Failure {
                input: p.to_csv(),
                observed: value,
                bound: -SCHUR_TOLERANCE,
            });
        }
        if value > max + SCHUR_TOLERANCE {
            failures.push(Failure {
                input: p.to_csv(),
                observed: value - max,
                bound: SCHUR_TOLERANCE,
            });
        }
    }
    PropertyReport {
        property: format!("faithfulness/{}/n={n}", measure.label()),
        trials,
        failures,
    }
}

/// Closed form against the defining construction on random full-support
/// distributions.
pub fn check_oracle_equivalence(
    measure: &Measure,
    n: usize,
    trials: usize,
    seed: u64,
) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let p = ProbabilityDistribution::random_with(n, &mut rng).unwrap();
        let closed = measure.closed_form(&p).expect("measure in range");
        let generic = measure.generic_form(&p).expect("measure in range");
        if (closed - generic).abs() > ORACLE_TOLERANCE {
            failures.push(Failure {
                input: p.to_csv(),
                observed: (closed - generic).abs(),
                bound: ORACLE_TOLERANCE,
            });
        }
    }
    PropertyReport {
        property: format!("oracle-equivalence/{}/n={n}", measure.label()),
        trials,
        failures,
    }
}

/// On random diagonal states, each quantum measure must hit its classical
/// counterpart evaluated on the diagonal.
pub fn check_quantum_classical_reduction(
    spec: QuantumDistance,
    d: usize,
    trials: usize,
    seed: u64,
) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let p = ProbabilityDistribution::random_with(d, &mut rng).unwrap();
        let rho = DensityMatrix::from_diagonal(&p);
        let observed = quantum::induced_uncertainty(spec, &rho).expect("spec in range");
        let expected = classical_counterpart(spec, &p);
        if (observed - expected).abs() > QUANTUM_TOLERANCE {
            failures.push(Failure {
                input: p.to_csv(),
                observed: (observed - expected).abs(),
                bound: QUANTUM_TOLERANCE,
            });
        }
    }
    PropertyReport {
        property: format!("quantum-classical-reduction/{}/d={d}", spec.label()),
        trials,
        failures,
    }
}

/// The classical value a quantum measure must reduce to on diagonal states.
pub fn classical_counterpart(spec: QuantumDistance, p: &ProbabilityDistribution) -> f64 {
    let d = p.n() as f64;
    match spec {
        QuantumDistance::SandwichedRenyi { alpha } => Measure::Renyi { alpha }
            .closed_form(p)
            .expect("alpha in range"),
        QuantumDistance::QuantumTsallis { beta } => Measure::TsallisU { beta }
            .closed_form(p)
            .expect("beta in range"),
        QuantumDistance::HilbertSchmidt => {
            1.0 - p.probs().iter().map(|x| x * x).sum::<f64>()
        }
        QuantumDistance::Bures | QuantumDistance::Hellinger => Measure::HellingerU
            .closed_form(p)
            .expect("always in range"),
        QuantumDistance::Schatten { p: order } | QuantumDistance::Entrywise { p: order } => {
            let constant = ((d - 1.0).powf(order) + d - 1.0).powf(1.0 / order) / d;
            let sum: f64 = p
                .probs()
                .iter()
                .map(|x| (x - 1.0 / d).abs().powf(order))
                .sum();
            constant - sum.powf(1.0 / order)
        }
    }
}

/// Unitary invariance of the induced measure over random conjugations.
pub fn check_unitary_invariance(
    spec: QuantumDistance,
    d: usize,
    trials: usize,
    seed: u64,
) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let rho = DensityMatrix::random_with(d, d, &mut rng).unwrap();
        let w = quantum::random_unitary(d, seed ^ (trial as u64).wrapping_mul(0x9e3779b9));
        let rotated = quantum::conjugate(&rho, &w).expect("conjugation stays valid");
        let a = quantum::induced_uncertainty(spec, &rho).expect("spec in range");
        let b = quantum::induced_uncertainty(spec, &rotated).expect("spec in range");
        if (a - b).abs() > QUANTUM_TOLERANCE {
            failures.push(Failure {
                input: format!("trial={trial}"),
                observed: (a - b).abs(),
                bound: QUANTUM_TOLERANCE,
            });
        }
    }
    PropertyReport {
        property: format!("unitary-invariance/{}/d={d}", spec.label()),
        trials,
        failures,
    }
}

/// Quantum faithfulness: zero on pure states, maximal at `I/d`.
pub fn check_purity_extremes(
    spec: QuantumDistance,
    d: usize,
    trials: usize,
    seed: u64,
) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let max = quantum::induced_uncertainty(spec, &DensityMatrix::maximally_mixed(d))
        .expect("spec in range");
    for trial in 0..trials {
        let pure = DensityMatrix::random_with(d, 1, &mut rng).unwrap();
        let at_pure = quantum::induced_uncertainty(spec, &pure).expect("spec in range");
        if at_pure.abs() > QUANTUM_TOLERANCE {
            failures.push(Failure {
                input: format!("pure trial={trial}"),
                observed: at_pure,
                bound: QUANTUM_TOLERANCE,
            });
        }
        let rho = DensityMatrix::random_with(d, d, &mut rng).unwrap();
        let value = quantum::induced_uncertainty(spec, &rho).expect("spec in range");
        if value > max + QUANTUM_TOLERANCE || value < -QUANTUM_TOLERANCE {
            failures.push(Failure {
                input: format!("mixed trial={trial}"),
                observed: value,
                bound: max,
            });
        }
    }
    PropertyReport {
        property: format!("purity-extremes/{}/d={d}", spec.label()),
        trials,
        failures,
    }
}

/// The classical measures exercised by the standard suites.
pub fn standard_classical_measures() -> Vec<Measure> {
    vec![
        Measure::Shannon,
        Measure::Renyi { alpha: 0.3 },
        Measure::Renyi { alpha: 0.5 },
        Measure::Renyi { alpha: 2.0 },
        Measure::Renyi { alpha: 5.0 },
        Measure::Hartley,
        Measure::Bhattacharyya,
        Measure::MinEntropy,
        Measure::DownRenyi { gamma: 0.3 },
        Measure::DownRenyi { gamma: 0.7 },
        Measure::JensenShannonU,
        Measure::TsallisU { beta: 0.5 },
        Measure::TsallisU { beta: 2.0 },
        Measure::TsallisU { beta: 3.0 },
        Measure::DownTsallis { beta: 0.3 },
        Measure::DownTsallis { beta: 0.7 },
        Measure::HellingerU,
        Measure::AbsoluteU,
    ]
}

/// The quantum distance specs exercised by the standard suites.
pub fn standard_quantum_specs() -> Vec<QuantumDistance> {
    vec![
        QuantumDistance::Bures,
        QuantumDistance::Hellinger,
        QuantumDistance::Schatten { p: 1.0 },
        QuantumDistance::Schatten { p: 2.0 },
        QuantumDistance::Schatten { p: 3.0 },
        QuantumDistance::Entrywise { p: 2.0 },
        QuantumDistance::HilbertSchmidt,
        QuantumDistance::SandwichedRenyi { alpha: 0.3 },
        QuantumDistance::SandwichedRenyi { alpha: 0.5 },
        QuantumDistance::SandwichedRenyi { alpha: 2.0 },
        QuantumDistance::SandwichedRenyi { alpha: 5.0 },
        QuantumDistance::QuantumTsallis { beta: 0.3 },
        QuantumDistance::QuantumTsallis { beta: 0.7 },
        QuantumDistance::QuantumTsallis { beta: 2.0 },
        QuantumDistance::QuantumTsallis { beta: 3.0 },
    ]
}

/// Trial counts for the standard suites.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub schur_trials: usize,
    pub faithfulness_trials: usize,
    pub oracle_trials: usize,
    pub quantum_trials: usize,
    pub unitary_trials: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            schur_trials: 10_000,
            faithfulness_trials: 10_000,
            oracle_trials: 1_000,
            quantum_trials: 1_000,
            unitary_trials: 100,
        }
    }
}

/// Schur-concavity, faithfulness, and oracle equivalence for every classical
/// measure, n in 2..=6.
pub fn classical_suite(seed: u64, config: SuiteConfig) -> Vec<PropertyReport> {
    let mut reports = Vec::new();
    for measure in standard_classical_measures() {
        for n in 2..=6 {
            reports.push(check_schur_concavity(
                &measure,
                n,
                config.schur_trials,
                seed,
            ));
            reports.push(check_faithfulness(
                &measure,
                n,
                config.faithfulness_trials,
                seed.wrapping_add(1),
            ));
            reports.push(check_oracle_equivalence(
                &measure,
                n,
                config.oracle_trials,
                seed.wrapping_add(2),
            ));
        }
    }
    reports
}

/// Classical reduction, unitary invariance, and purity extremes for every
/// quantum spec.
pub fn quantum_suite(seed: u64, config: SuiteConfig) -> Vec<PropertyReport> {
    let mut reports = Vec::new();
    for spec in standard_quantum_specs() {
        for d in [2, 4, 8] {
            reports.push(check_quantum_classical_reduction(
                spec,
                d,
                config.quantum_trials,
                seed,
            ));
        }
        for d in [2, 3, 5] {
            reports.push(check_unitary_invariance(
                spec,
                d,
                config.unitary_trials,
                seed.wrapping_add(1),
            ));
        }
        reports.push(check_purity_extremes(
            spec,
            4,
            config.quantum_trials.min(200),
            seed.wrapping_add(2),
        ));
    }
    reports
}

/// Closed-form candidates that fail the defining construction.
///
/// These are kept as executable regression witnesses: should an edit ever
/// make one of them agree with the oracle, the errata suite turns red and
/// the corresponding corrected form needs a second look.
pub mod variants {
    use crate::distributions::ProbabilityDistribution;

    /// Jensen-Shannon uncertainty with the constant written as
    /// `log2(4n^2 / (n+1)^((n+1)/n))`. Exceeds the construction by exactly
    /// `2 log2 n`, so it fails to vanish on certain distributions.
    pub fn js_with_4n2_constant(p: &ProbabilityDistribution) -> f64 {
        let n = p.n() as f64;
        let mut acc = (4.0 * n * n / (n + 1.0).powf((1.0 + n) / n)).log2();
        for &x in p.probs() {
            if x > 0.0 {
                acc -= x * x.log2();
            }
            acc += (2.0 / n) * ((n * x + 1.0) / 2.0) * ((n * x + 1.0) / 2.0).log2();
        }
        acc
    }

    /// Hellinger uncertainty claimed as `1 − Σ p²`. That is the
    /// Hilbert-Schmidt (linear-entropy) value, not what the Hellinger
    /// distance induces.
    pub fn hellinger_as_one_minus_sum_sq(p: &ProbabilityDistribution) -> f64 {
        1.0 - p.probs().iter().map(|x| x * x).sum::<f64>()
    }

    /// Downward Tsallis uncertainty with a stray `1 − n^β` term:
    /// `(1 − n^β − Σ p^(1−β)) / (n^β (β−1))`. Evaluates to `1/(1−β)` instead
    /// of 0 on certain distributions.
    pub fn down_tsallis_with_stray_term(beta: f64, p: &ProbabilityDistribution) -> f64 {
        let n = p.n() as f64;
        let sum: f64 = p
            .probs()
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|x| x.powf(1.0 - beta))
            .sum();
        (1.0 - n.powf(beta) - sum) / (n.powf(beta) * (beta - 1.0))
    }

    /// Bures/Hellinger induced measure with a `1/√d` prefactor instead of
    /// the `2/√d` the two-term construction yields.
    pub fn bures_with_half_constant(trace_sqrt: f64, d: usize) -> f64 {
        (trace_sqrt - 1.0) / (d as f64).sqrt()
    }

    /// Quantum Tsallis divergence with prefactor `1/(1−β)` and no `−1`
    /// completion: `Tr(σ^((1−β)/2) ρ^β σ^((1−β)/2)) / (1−β)`. Nonzero at
    /// ρ = σ and negative on pure states for β > 1.
    pub fn quantum_tsallis_uncompleted(trace_sandwich: f64, beta: f64) -> f64 {
        trace_sandwich / (1.0 - beta)
    }
}

/// Regression fixtures proving the rejected variants disagree with the
/// construction where they should. Each report passes when the documented
/// discrepancy is present.
pub fn errata_suite() -> Vec<PropertyReport> {
    let mut reports = Vec::new();

    // 1. JS constant: variant at a certain distribution equals 2 log2 n,
    //    the construction gives 0.
    {
        let mut failures = Vec::new();
        for n in 2..=5 {
            let certain = ProbabilityDistribution::certain(n, 0).unwrap();
            let variant = variants::js_with_4n2_constant(&certain);
            let oracle = Measure::JensenShannonU.generic_form(&certain).unwrap();
            let expected_gap = 2.0 * (n as f64).log2();
            if (variant - expected_gap).abs() > 1e-9 || oracle.abs() > SCHUR_TOLERANCE {
                failures.push(Failure {
                    input: format!("certain({n},0)"),
                    observed: variant - oracle,
                    bound: expected_gap,
                });
            }
        }
        reports.push(PropertyReport {
            property: "errata/js-constant-off-by-2log2n".to_string(),
            trials: 4,
            failures,
        });
    }

    // 2. Hellinger closed form: the 1 − Σp² candidate misses the oracle by
    //    > 0.1 at {0.75, 0.25}; the corrected form matches to 1e-9.
    {
        let p = ProbabilityDistribution::new(&[0.75, 0.25]).unwrap();
        let variant = variants::hellinger_as_one_minus_sum_sq(&p);
        let oracle = Measure::HellingerU.generic_form(&p).unwrap();
        let corrected = Measure::HellingerU.closed_form(&p).unwrap();
        let expected_oracle = 2.0_f64.sqrt() * (0.75_f64.sqrt() + 0.25_f64.sqrt() - 1.0);
        let mut failures = Vec::new();
        if (variant - 0.375).abs() > 1e-12
            || (oracle - expected_oracle).abs() > 1e-9
            || (variant - oracle).abs() < 0.1
            || (corrected - oracle).abs() > 1e-9
        {
            failures.push(Failure {
                input: p.to_csv(),
                observed: variant,
                bound: oracle,
            });
        }
        reports.push(PropertyReport {
            property: "errata/hellinger-not-linear-entropy".to_string(),
            trials: 1,
            failures,
        });
    }

    // 3. Downward Tsallis: the stray-term variant gives 1/(1−β) at certain
    //    distributions; the corrected form gives 0.
    {
        let mut failures = Vec::new();
        for beta in [0.3, 0.7] {
            for n in 2..=4 {
                let certain = ProbabilityDistribution::certain(n, 0).unwrap();
                let variant = variants::down_tsallis_with_stray_term(beta, &certain);
                let corrected = Measure::DownTsallis { beta }.closed_form(&certain).unwrap();
                if (variant - 1.0 / (1.0 - beta)).abs() > 1e-12
                    || corrected.abs() > SCHUR_TOLERANCE
                {
                    failures.push(Failure {
                        input: format!("beta={beta} certain({n},0)"),
                        observed: variant,
                        bound: 1.0 / (1.0 - beta),
                    });
                }
            }
        }
        reports.push(PropertyReport {
            property: "errata/down-tsallis-stray-term".to_string(),
            trials: 6,
            failures,
        });
    }

    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn small_suites_are_green() {
        let config = SuiteConfig {
            schur_trials: 200,
            faithfulness_trials: 200,
            oracle_trials: 100,
            quantum_trials: 30,
            unitary_trials: 5,
        };
        for report in classical_suite(7, config) {
            assert!(report.passed(), "{report}");
        }
        for report in quantum_suite(7, config) {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn schur_check_catches_a_schur_convex_function() {
        // U(p) = p_1 grows under concentration; the check must flag it.
        let report =
            check_schur_concavity_of("fixture/p1", |p| p.probs()[0], 3, 500, 11);
        assert!(!report.passed());
    }

    #[test]
    fn errata_fixtures_stay_red_against_the_oracle() {
        for report in errata_suite() {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn quantum_errata_variants_disagree() {
        // Bures constant: the two-term construction yields twice the
        // half-constant variant.
        let rho = crate::sweep::mixture_state(0.5).unwrap();
        let spectrum = rho.spectrum().unwrap();
        let trace_sqrt: f64 = spectrum.clamped_eigenvalues().iter().map(|l| l.sqrt()).sum();
        let constructed = quantum::induced_uncertainty(QuantumDistance::Bures, &rho).unwrap();
        let variant = variants::bures_with_half_constant(trace_sqrt, 2);
        assert_abs_diff_eq!(constructed, 2.0 * variant, epsilon = 1e-9);
        assert!((constructed - variant).abs() > 0.1);

        // Uncompleted quantum Tsallis: nonzero at rho = sigma, negative on
        // pure states for beta > 1; the completed form is zero / positive.
        let beta = 2.0_f64;
        let d = 2.0_f64;
        // Tr(sigma^((1-beta)/2) rho^beta sigma^((1-beta)/2)) at rho = sigma = I/d.
        let at_equal = d * (1.0 / d).powf(beta) * (1.0 / d).powf(1.0 - beta);
        let variant_at_equal = variants::quantum_tsallis_uncompleted(at_equal, beta);
        assert!(variant_at_equal.abs() > 0.1);
        let mixed = DensityMatrix::maximally_mixed(2);
        let completed = quantum::distance(QuantumDistance::QuantumTsallis { beta }, &mixed, &mixed)
            .unwrap();
        assert_abs_diff_eq!(completed, 0.0, epsilon = 1e-12);
        // Pure vs I/d: variant is negative, completed is positive.
        let trace_pure = d.powf(beta - 1.0);
        assert!(variants::quantum_tsallis_uncompleted(trace_pure, beta) < 0.0);
        let pure = DensityMatrix::pure(2, 0).unwrap();
        let completed =
            quantum::distance(QuantumDistance::QuantumTsallis { beta }, &pure, &mixed).unwrap();
        assert!(completed > 0.0);
    }

    #[test]
    fn reports_render_the_line_format() {
        let report = PropertyReport {
            property: "demo".to_string(),
            trials: 3,
            failures: vec![Failure {
                input: "x=1".to_string(),
                observed: 2.0,
                bound: 1.0,
            }],
        };
        let text = report.to_string();
        assert!(text.starts_with("PROPERTY demo trials=3 failures=1"));
        assert!(text.contains("FAIL input=x=1"));
        assert!(!report.passed());
    }
}
