//! Run reports and the CSV tables derived from them.

use std::path::Path;

use jpda_core::{Algorithm, FitReport};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const TARGET_LABEL_NOTE: &str =
    "target labels, when supplied, were used only to score predictions; the solvers never saw them";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmResult {
    pub algorithm: Algorithm,
    pub final_accuracy: Option<f64>,
    /// Final 1-based target predictions.
    pub predictions: Vec<usize>,
    pub fit: FitReport,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataSummary {
    pub description: String,
    pub dim: usize,
    pub class_count: usize,
    pub source_len: usize,
    pub target_len: usize,
    pub target_labels_present: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub artifact_version: String,
    pub seed: u64,
    /// Effective configuration; feeding it back reproduces the run.
    pub config: String,
    pub data: DataSummary,
    pub target_label_note: String,
    pub raw_nn_accuracy: Option<f64>,
    pub results: Vec<AlgorithmResult>,
    pub total_seconds: f64,
}

impl RunReport {
    pub fn result(&self, algorithm: Algorithm) -> Option<&AlgorithmResult> {
        self.results.iter().find(|r| r.algorithm == algorithm)
    }

    pub fn accuracy_rows(&self) -> Vec<AccuracyRow> {
        let mut rows = vec![AccuracyRow {
            algorithm: "raw".into(),
            accuracy: self.raw_nn_accuracy,
            seconds: 0.0,
            effective_p: self.data.dim,
            iterations: 0,
        }];
        rows.extend(self.results.iter().map(|r| AccuracyRow {
            algorithm: r.algorithm.name().into(),
            accuracy: r.final_accuracy,
            seconds: r.seconds,
            effective_p: r.fit.effective_p,
            iterations: r.fit.records.len(),
        }));
        rows
    }

    pub fn trace_rows(&self) -> Vec<TraceRow> {
        self.results
            .iter()
            .flat_map(|r| {
                r.fit.records.iter().map(move |rec| TraceRow {
                    algorithm: r.algorithm.name().into(),
                    iteration: rec.iteration,
                    mmd: rec.transfer_term,
                    discriminative: rec.discriminative_term,
                    objective: rec.objective,
                    accuracy: rec.accuracy,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyRow {
    pub algorithm: String,
    pub accuracy: Option<f64>,
    pub seconds: f64,
    pub effective_p: usize,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub algorithm: String,
    pub iteration: usize,
    /// Projected same-class discrepancy `tr(AᵀX R_min XᵀA)`.
    pub mmd: f64,
    pub discriminative: f64,
    pub objective: f64,
    pub accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub algorithm: Algorithm,
    pub mu: f64,
    pub lambda: f64,
    pub seed: u64,
    pub accuracy: f64,
    pub raw_nn_accuracy: f64,
    pub effective_p: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub algorithm: String,
    pub mu: f64,
    pub lambda: f64,
    pub seeds: usize,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    pub mean_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub artifact_version: String,
    pub config: String,
    pub target_label_note: String,
    pub cells: Vec<SweepCell>,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingRow {
    pub pc1: f64,
    pub pc2: f64,
    pub domain: String,
    /// 1-based; target rows carry ground truth when supplied, else pseudo-labels.
    pub class: usize,
}

/// Mean and sample standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

pub fn read_csv<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|row| row.map_err(Into::into)).collect()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|e| HarnessError::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}
