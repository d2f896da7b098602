//! `divun` — evaluate divergence-induced uncertainty measures, reproduce the
//! curve families as CSV sweeps, and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification-property failure, 2 usage or
//! validation error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use divun::format::format_sig;
use divun::quantum::{self, DensityMatrix, QuantumDistance};
use divun::sweep::{self, Normalization};
use divun::uncertainty::Measure;
use divun::verify::{self, SuiteConfig};
use divun::ProbabilityDistribution;

#[derive(Parser)]
#[command(
    name = "divun",
    version,
    about = "Uncertainty measures induced by statistical divergences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one measure on a distribution or density matrix.
    Measure(MeasureArgs),
    /// CSV sweep of the binary family {p, 1-p} over p in [0, 1].
    SweepClassical(SweepClassicalArgs),
    /// CSV sweep of rho = p|0><0| + (1-p) I/2 over p in [0, 1].
    SweepQuantum(SweepQuantumArgs),
    /// Run verification suites; exit 1 on any property failure.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MeasureArgs {
    /// Measure id: shannon | renyi | hartley | bhattacharyya | min-entropy |
    /// down-renyi | js | tsallis | down-tsallis | hellinger | absolute |
    /// bures | qhellinger | schatten | lp | hs | gen-renyi | gen-tsallis
    #[arg(long)]
    id: String,
    /// Renyi order (also the down-renyi exponent gamma and gen-renyi order).
    #[arg(long)]
    alpha: Option<f64>,
    /// Tsallis order (also down-tsallis and gen-tsallis).
    #[arg(long)]
    beta: Option<f64>,
    /// Norm order for schatten / lp.
    #[arg(long)]
    p: Option<f64>,
    /// Inline distribution, e.g. "0.5,0.3,0.2".
    #[arg(long)]
    dist: Option<String>,
    /// Distribution file, one probability per line.
    #[arg(long)]
    dist_file: Option<PathBuf>,
    /// Density-matrix file (first line d, then d rows of re:im pairs).
    #[arg(long)]
    dm_file: Option<PathBuf>,
}

#[derive(Args)]
struct SweepClassicalArgs {
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
    /// none | paper | all
    #[arg(long, default_value = "none")]
    normalize: String,
    /// Comma-separated column measures.
    #[arg(long, default_value = "shannon,js,absolute,hellinger")]
    measures: String,
}

#[derive(Args)]
struct SweepQuantumArgs {
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
    /// none | paper | all
    #[arg(long, default_value = "none")]
    normalize: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// classical | quantum | errata | all
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Scale down the trial counts (for quick smoke runs).
    #[arg(long)]
    quick: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Measure(args) => {
            let value = measure(&args)?;
            println!("{}", format_sig(value, 12));
            Ok(ExitCode::SUCCESS)
        }
        Command::SweepClassical(args) => {
            let normalization = parse_normalization(&args.normalize)?;
            let measures = parse_measure_list(&args.measures)?;
            let result = sweep::classical_sweep(&measures, args.grid_step, normalization)?;
            print!("{}", result.to_csv());
            Ok(ExitCode::SUCCESS)
        }
        Command::SweepQuantum(args) => {
            let normalization = parse_normalization(&args.normalize)?;
            let result = sweep::quantum_sweep(args.grid_step, normalization)?;
            print!("{}", result.to_csv());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => verify_suites(&args),
    }
}

fn parse_normalization(text: &str) -> Result<Normalization> {
    Normalization::parse(text)
        .ok_or_else(|| anyhow!("normalize must be one of none|paper|all, got {text:?}"))
}

fn parse_measure_list(text: &str) -> Result<Vec<Measure>> {
    let mut measures = Vec::new();
    for id in text.split(',') {
        let id = id.trim();
        measures.push(match id {
            "shannon" => Measure::Shannon,
            "js" => Measure::JensenShannonU,
            "absolute" => Measure::AbsoluteU,
            "hellinger" => Measure::HellingerU,
            "hartley" => Measure::Hartley,
            "bhattacharyya" => Measure::Bhattacharyya,
            "min-entropy" => Measure::MinEntropy,
            _ => bail!("unknown sweep measure {id:?} (parameterized measures take the measure subcommand)"),
        });
    }
    if measures.is_empty() {
        bail!("measure list is empty");
    }
    Ok(measures)
}

fn measure(args: &MeasureArgs) -> Result<f64> {
    let need = |opt: Option<f64>, what: &str| {
        opt.ok_or_else(|| anyhow!("measure {:?} needs --{what}", args.id))
    };
    let classical: Option<Measure> = match args.id.as_str() {
        "shannon" => Some(Measure::Shannon),
        "renyi" => Some(Measure::Renyi {
            alpha: need(args.alpha, "alpha")?,
        }),
        "hartley" => Some(Measure::Hartley),
        "bhattacharyya" => Some(Measure::Bhattacharyya),
        "min-entropy" => Some(Measure::MinEntropy),
        "down-renyi" => Some(Measure::DownRenyi {
            gamma: need(args.alpha, "alpha")?,
        }),
        "js" => Some(Measure::JensenShannonU),
        "tsallis" => Some(Measure::TsallisU {
            beta: need(args.beta, "beta")?,
        }),
        "down-tsallis" => Some(Measure::DownTsallis {
            beta: need(args.beta, "beta")?,
        }),
        "hellinger" => Some(Measure::HellingerU),
        "absolute" => Some(Measure::AbsoluteU),
        _ => None,
    };
    if let Some(measure) = classical {
        let dist = load_distribution(args)?;
        return Ok(measure.closed_form(&dist)?);
    }

    let spec: QuantumDistance = match args.id.as_str() {
        "bures" => QuantumDistance::Bures,
        "qhellinger" => QuantumDistance::Hellinger,
        "schatten" => QuantumDistance::Schatten {
            p: need(args.p, "p")?,
        },
        "lp" => QuantumDistance::Entrywise {
            p: need(args.p, "p")?,
        },
        "hs" => QuantumDistance::HilbertSchmidt,
        "gen-renyi" => QuantumDistance::SandwichedRenyi {
            alpha: need(args.alpha, "alpha")?,
        },
        "gen-tsallis" => QuantumDistance::QuantumTsallis {
            beta: need(args.beta, "beta")?,
        },
        other => bail!("unknown measure id {other:?}"),
    };
    let rho = load_density_matrix(args)?;
    Ok(quantum::induced_uncertainty(spec, &rho)?)
}

fn load_distribution(args: &MeasureArgs) -> Result<ProbabilityDistribution> {
    match (&args.dist, &args.dist_file) {
        (Some(inline), None) => Ok(ProbabilityDistribution::from_csv_str(inline)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok(ProbabilityDistribution::from_lines_str(&text)?)
        }
        (None, None) => bail!("classical measures need --dist or --dist-file"),
        (Some(_), Some(_)) => bail!("--dist and --dist-file are mutually exclusive"),
    }
}

fn load_density_matrix(args: &MeasureArgs) -> Result<DensityMatrix> {
    let path = args
        .dm_file
        .as_ref()
        .ok_or_else(|| anyhow!("quantum measures need --dm-file"))?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(quantum::parse_density_matrix(&text)?)
}

fn verify_suites(args: &VerifyArgs) -> Result<ExitCode> {
    let config = if args.quick {
        SuiteConfig {
            schur_trials: 300,
            faithfulness_trials: 300,
            oracle_trials: 100,
            quantum_trials: 50,
            unitary_trials: 10,
        }
    } else {
        SuiteConfig::default()
    };
    let reports = match args.suite.as_str() {
        "classical" => verify::classical_suite(args.seed, config),
        "quantum" => verify::quantum_suite(args.seed, config),
        "errata" => verify::errata_suite(),
        "all" => {
            let mut all = verify::classical_suite(args.seed, config);
            all.extend(verify::quantum_suite(args.seed, config));
            all.extend(verify::errata_suite());
            all
        }
        other => bail!("unknown suite {other:?} (classical|quantum|errata|all)"),
    };
    let mut all_passed = true;
    for report in &reports {
        println!("{report}");
        all_passed &= report.passed();
    }
    if all_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
