//! Trial records and their aggregation into table rows.

use serde::{Deserialize, Serialize};

use crate::ansatz::AnsatzSpec;
use crate::error::{Error, Result};

/// One completed optimization trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub config_id: String,
    pub trial: usize,
    pub best_eev: f64,
    pub best_params: Vec<f64>,
    pub evals: u64,
    /// Wall-clock time of the trial. Informational only; not part of the
    /// record's identity (re-running reproduces everything else exactly).
    pub duration_ms: f64,
}

impl TrialRecord {
    /// Equality on the reproducible fields, ignoring the timing.
    pub fn semantic_eq(&self, other: &TrialRecord) -> bool {
        self.config_id == other.config_id
            && self.trial == other.trial
            && self.best_eev == other.best_eev
            && self.best_params == other.best_params
            && self.evals == other.evals
    }
}

/// One Max-Cut table row: best/mean/population-variance of the per-trial
/// best expectations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub model: String,
    pub best: f64,
    pub mean: f64,
    pub var: f64,
}

/// One Ising table row: mean gap to the exhaustive optimum over instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RimSummaryRow {
    pub model: String,
    pub mean_diff: f64,
}

/// Fixed row order used by every table.
pub const MODEL_ORDER: [&str; 6] = ["3p", "3p ent", "6p", "6p ent", "9p", "9p ent"];

/// The six ansatz shapes in table order.
pub fn model_specs() -> Vec<AnsatzSpec> {
    let mut specs = Vec::with_capacity(6);
    for layers in 1..=3 {
        for entangled in [false, true] {
            specs.push(AnsatzSpec::new(layers, entangled).expect("static depths are valid"));
        }
    }
    specs
}

/// Extract the model label from a `<tag>__<model>__<optimizer>` config id.
pub fn model_label_of(config_id: &str) -> Result<String> {
    let mut parts = config_id.rsplitn(3, "__");
    let _optimizer = parts.next();
    match (parts.next(), parts.next()) {
        (Some(model), Some(_tag)) => Ok(model.to_string()),
        _ => Err(Error::Input(format!(
            "config id '{config_id}' is not of the form <tag>__<model>__<optimizer>"
        ))),
    }
}

/// Collapse one config's trials into a table row. `best` is the max,
/// `mean` the arithmetic mean, `var` the population variance (divide by N).
pub fn summarize(records: &[TrialRecord]) -> Result<SummaryRow> {
    let first = records
        .first()
        .ok_or_else(|| Error::Input("cannot summarize zero records".into()))?;
    if records.iter().any(|r| r.config_id != first.config_id) {
        return Err(Error::Input(
            "summarize expects records from a single configuration".into(),
        ));
    }
    let model = model_label_of(&first.config_id)?;
    let n = records.len() as f64;
    let best = records.iter().map(|r| r.best_eev).fold(f64::NEG_INFINITY, f64::max);
    let mean = records.iter().map(|r| r.best_eev).sum::<f64>() / n;
    let var = records
        .iter()
        .map(|r| (r.best_eev - mean) * (r.best_eev - mean))
        .sum::<f64>()
        / n;
    Ok(SummaryRow {
        model,
        best,
        mean,
        var,
    })
}
