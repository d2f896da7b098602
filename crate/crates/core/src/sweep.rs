//! Deterministic parameter sweeps of the uncertainty curves, for CSV output.
//!
//! The classical sweep walks the binary family `{p, 1-p}`; the quantum sweep
//! walks `rho = p |0><0| + (1-p) I/2` in d = 2. Output is byte-stable: fixed
//! column order, `%.12g` formatting, `\n` line endings.

use thiserror::Error;

use crate::distributions::{DistributionError, ProbabilityDistribution};
use crate::format::format_sig;
use crate::quantum::{self, DensityMatrix, QuantumDistance, QuantumError};
use crate::uncertainty::{Measure, UncertaintyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("grid step {step} out of range (0, {max}]")]
    BadGridStep { step: f64, max: f64 },
    #[error(transparent)]
    Uncertainty(#[from] UncertaintyError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

/// Which columns get divided by their maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Raw values.
    None,
    /// Only the bounded geometric measures (Hellinger, absolute / Bures),
    /// matching the usual presentation of these curve families.
    Paper,
    /// Every column.
    All,
}

impl Normalization {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "none" => Some(Self::None),
            "paper" => Some(Self::Paper),
            "all" => Some(Self::All),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepColumn {
    pub label: String,
    pub values: Vec<f64>,
    /// What the raw values were divided by (1 when unnormalized).
    pub divisor: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub parameter: String,
    pub grid: Vec<f64>,
    pub columns: Vec<SweepColumn>,
}

impl SweepResult {
    /// CSV with header `parameter,label,...`, `%.12g` everywhere.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.parameter);
        for column in &self.columns {
            out.push(',');
            out.push_str(&column.label);
        }
        out.push('\n');
        for (row, &x) in self.grid.iter().enumerate() {
            out.push_str(&format_sig(x, 12));
            for column in &self.columns {
                out.push(',');
                out.push_str(&format_sig(column.values[row], 12));
            }
            out.push('\n');
        }
        out
    }
}

fn grid(step: f64, max_step: f64) -> Result<Vec<f64>, SweepError> {
    if !(step > 0.0 && step <= max_step) {
        return Err(SweepError::BadGridStep {
            step,
            max: max_step,
        });
    }
    let count = (1.0 / step + 1e-9).floor() as usize;
    let mut points: Vec<f64> = (0..=count).map(|i| i as f64 * step).collect();
    if let Some(&last) = points.last() {
        if last < 1.0 - 1e-9 {
            points.push(1.0);
        }
    }
    Ok(points)
}

/// The default classical column set.
pub fn default_classical_measures() -> Vec<Measure> {
    vec![
        Measure::Shannon,
        Measure::JensenShannonU,
        Measure::AbsoluteU,
        Measure::HellingerU,
    ]
}

/// Classical sweep of `{p, 1-p}` over `p in [0, 1]`.
pub fn classical_sweep(
    measures: &[Measure],
    grid_step: f64,
    normalization: Normalization,
) -> Result<SweepResult, SweepError> {
    let points = grid(grid_step, 0.5)?;
    let mut columns = Vec::with_capacity(measures.len());
    for measure in measures {
        let divisor = match normalization {
            Normalization::None => 1.0,
            Normalization::All => measure.max_value(2)?,
            Normalization::Paper => match measure {
                Measure::HellingerU | Measure::AbsoluteU => measure.max_value(2)?,
                _ => 1.0,
            },
        };
        let mut values = Vec::with_capacity(points.len());
        for &p in &points {
            let dist = ProbabilityDistribution::new(&[p, 1.0 - p])?;
            values.push(measure.closed_form(&dist)? / divisor);
        }
        columns.push(SweepColumn {
            label: measure.label(),
            values,
            divisor,
        });
    }
    Ok(SweepResult {
        parameter: "p".to_string(),
        grid: points,
        columns,
    })
}

/// Quantum sweep of `rho = p |0><0| + (1-p) I/2` over the mixing parameter.
///
/// Columns: Bures, Schatten-1 (`l1`), Hilbert-Schmidt (`hs`), and the von
/// Neumann entropy (`shannon`).
pub fn quantum_sweep(
    grid_step: f64,
    normalization: Normalization,
) -> Result<SweepResult, SweepError> {
    let points = grid(grid_step, 1.0)?;
    let specs: [(&str, Option<QuantumDistance>); 4] = [
        ("bures", Some(QuantumDistance::Bures)),
        ("l1", Some(QuantumDistance::Schatten { p: 1.0 })),
        ("hs", Some(QuantumDistance::HilbertSchmidt)),
        ("shannon", None), // von Neumann entropy
    ];
    let mixed = DensityMatrix::maximally_mixed(2);
    let mut columns = Vec::with_capacity(specs.len());
    for (label, spec) in specs {
        let at = |rho: &DensityMatrix| -> Result<f64, QuantumError> {
            match spec {
                Some(spec) => quantum::induced_uncertainty(spec, rho),
                None => quantum::von_neumann_entropy(rho),
            }
        };
        let divisor = match normalization {
            Normalization::None => 1.0,
            Normalization::All => at(&mixed)?,
            Normalization::Paper => match spec {
                Some(QuantumDistance::Bures) | Some(QuantumDistance::Hellinger) => at(&mixed)?,
                _ => 1.0,
            },
        };
        let mut values = Vec::with_capacity(points.len());
        for &p in &points {
            let rho = mixture_state(p)?;
            values.push(at(&rho)? / divisor);
        }
        columns.push(SweepColumn {
            label: label.to_string(),
            values,
            divisor,
        });
    }
    Ok(SweepResult {
        parameter: "p".to_string(),
        grid: points,
        columns,
    })
}

/// `p |0><0| + (1-p) I/2` in d = 2.
pub fn mixture_state(p: f64) -> Result<DensityMatrix, QuantumError> {
    DensityMatrix::from_real(2, &[(1.0 + p) / 2.0, 0.0, 0.0, (1.0 - p) / 2.0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn grid_handles_uneven_steps() {
        assert_eq!(grid(0.25, 0.5).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = grid(0.3, 0.5).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!(grid(0.0, 0.5).is_err());
        assert!(grid(0.6, 0.5).is_err());
        assert_eq!(grid(0.01, 0.5).unwrap().len(), 101);
    }

    #[test]
    fn classical_sweep_normalized_peaks_at_one() {
        let result = classical_sweep(
            &default_classical_measures(),
            0.05,
            Normalization::All,
        )
        .unwrap();
        for column in &result.columns {
            let max = column.values.iter().fold(f64::MIN, |m, &v| m.max(v));
            assert!(max <= 1.0 + 1e-12, "{}: {max}", column.label);
            assert_abs_diff_eq!(max, 1.0, epsilon = 1e-12);
        }
        // Paper mode leaves shannon and js untouched.
        let paper = classical_sweep(&default_classical_measures(), 0.05, Normalization::Paper)
            .unwrap();
        assert_eq!(paper.columns[0].divisor, 1.0);
        assert_eq!(paper.columns[1].divisor, 1.0);
        assert!(paper.columns[2].divisor != 1.0);
        assert!(paper.columns[3].divisor != 1.0);
    }

    #[test]
    fn quantum_sweep_spot_values() {
        let result = quantum_sweep(0.25, Normalization::None).unwrap();
        assert_eq!(result.columns[1].label, "l1");
        // p = 0.5 is row 2: l1 = 1 - p, hs = (1 - p^2)/2.
        assert_abs_diff_eq!(result.columns[1].values[2], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(result.columns[2].values[2], 0.375, epsilon = 1e-12);
        // p = 1 is pure: everything vanishes.
        for column in &result.columns {
            assert_abs_diff_eq!(*column.values.last().unwrap(), 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn csv_is_stable() {
        let a = classical_sweep(&default_classical_measures(), 0.5, Normalization::None)
            .unwrap()
            .to_csv();
        let b = classical_sweep(&default_classical_measures(), 0.5, Normalization::None)
            .unwrap()
            .to_csv();
        assert_eq!(a, b);
        assert_eq!(
            a.lines().next().unwrap(),
            "p,shannon,js,absolute,hellinger"
        );
        assert!(a.ends_with('\n'));
        assert!(!a.contains(",\n"));
    }
}
