//! Browser bindings for the uncertainty-curve explorer.
//!
//! Three operations are exposed: the classical curve family over the binary
//! distribution `{p, 1-p}`, the quantum mixedness curves over
//! `rho = p|0><0| + (1-p) I/2`, and single-measure evaluation on a
//! user-supplied distribution. Curve data crosses the boundary as a flat
//! `Float64Array` (rows of `1 + column-count` values); labels travel
//! separately as a comma-joined string.
//!
//! Build with `wasm-pack build --target web --out-dir www/pkg`; the static
//! page in `www/` does the plotting.

use wasm_bindgen::prelude::*;

use divun::sweep::{self, Normalization};
use divun::uncertainty::Measure;
use divun::ProbabilityDistribution;

const CLASSICAL_LABELS: &str = "p,shannon,js,absolute,hellinger";
const QUANTUM_LABELS: &str = "p,bures,l1,hs,shannon";

fn parse_normalization(text: &str) -> Result<Normalization, String> {
    Normalization::parse(text).ok_or_else(|| format!("normalize must be none|paper|all, got {text:?}"))
}

fn flatten(result: &sweep::SweepResult) -> Vec<f64> {
    let mut flat = Vec::with_capacity(result.grid.len() * (1 + result.columns.len()));
    for (row, &p) in result.grid.iter().enumerate() {
        flat.push(p);
        for column in &result.columns {
            flat.push(column.values[row]);
        }
    }
    flat
}

fn classical_curves_impl(grid_step: f64, normalize: &str) -> Result<Vec<f64>, String> {
    let normalization = parse_normalization(normalize)?;
    let result = sweep::classical_sweep(
        &sweep::default_classical_measures(),
        grid_step,
        normalization,
    )
    .map_err(|e| e.to_string())?;
    Ok(flatten(&result))
}

fn quantum_curves_impl(grid_step: f64, normalize: &str) -> Result<Vec<f64>, String> {
    let normalization = parse_normalization(normalize)?;
    let result = sweep::quantum_sweep(grid_step, normalization).map_err(|e| e.to_string())?;
    Ok(flatten(&result))
}

fn measure_value_impl(id: &str, order: Option<f64>, dist_csv: &str) -> Result<f64, String> {
    let need = |what: &str| order.ok_or_else(|| format!("measure {id:?} needs an order ({what})"));
    let measure = match id {
        "shannon" => Measure::Shannon,
        "renyi" => Measure::Renyi { alpha: need("alpha")? },
        "hartley" => Measure::Hartley,
        "bhattacharyya" => Measure::Bhattacharyya,
        "min-entropy" => Measure::MinEntropy,
        "down-renyi" => Measure::DownRenyi { gamma: need("gamma")? },
        "js" => Measure::JensenShannonU,
        "tsallis" => Measure::TsallisU { beta: need("beta")? },
        "down-tsallis" => Measure::DownTsallis { beta: need("beta")? },
        "hellinger" => Measure::HellingerU,
        "absolute" => Measure::AbsoluteU,
        other => return Err(format!("unknown measure id {other:?}")),
    };
    let dist = ProbabilityDistribution::from_csv_str(dist_csv).map_err(|e| e.to_string())?;
    measure.closed_form(&dist).map_err(|e| e.to_string())
}

/// Classical curves over `{p, 1-p}`, flattened row-major; see
/// [`classical_curve_labels`] for the column order.
#[wasm_bindgen]
pub fn classical_curves(grid_step: f64, normalize: &str) -> Result<Vec<f64>, JsValue> {
    classical_curves_impl(grid_step, normalize).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classical_curve_labels() -> String {
    CLASSICAL_LABELS.to_string()
}

/// Quantum mixedness curves over `p|0><0| + (1-p) I/2`, flattened row-major.
#[wasm_bindgen]
pub fn quantum_curves(grid_step: f64, normalize: &str) -> Result<Vec<f64>, JsValue> {
    quantum_curves_impl(grid_step, normalize).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn quantum_curve_labels() -> String {
    QUANTUM_LABELS.to_string()
}

/// Evaluates one measure on a comma-separated distribution; `order` carries
/// the Renyi/Tsallis parameter where the measure takes one.
#[wasm_bindgen]
pub fn measure_value(id: &str, order: Option<f64>, dist_csv: &str) -> Result<f64, JsValue> {
    measure_value_impl(id, order, dist_csv).map_err(|e| JsValue::from_str(&e))
}
