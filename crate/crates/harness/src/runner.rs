//! Subcommand implementations. Each computes its result in memory and a
//! matching `write_*` function emits the files.

use std::path::{Path, PathBuf};
use std::time::Instant;

use jpda_core::{accuracy, fit, generate_pair, knn1_predict, Algorithm, DomainPair};
use rayon::prelude::*;

use crate::config::{DataSource, ExperimentConfig};
use crate::dataset::{load_pair, write_dataset};
use crate::embed::pca2;
use crate::error::{HarnessError, Result};
use crate::report::{
    mean_std, write_csv, write_json, AlgorithmResult, DataSummary, EmbeddingRow, RunReport,
    SweepCell, SweepReport, SweepRow, ARTIFACT_VERSION, TARGET_LABEL_NOTE,
};

pub const REPORT_FILE: &str = "report.json";
pub const ACCURACY_FILE: &str = "accuracy.csv";
pub const TRACE_FILE: &str = "trace.csv";
pub const SWEEP_FILE: &str = "sweep.csv";
pub const EMBEDDING_FILE: &str = "embedding.csv";
pub const ERROR_FILE: &str = "error.json";

/// A domain pair plus the 0-based target truth used for scoring.
pub struct PreparedData {
    pub pair: DomainPair,
    pub truth: Option<Vec<usize>>,
    pub summary: DataSummary,
}

/// Loads the configured files, or generates the synthetic pair for `seed`.
pub fn prepare(config: &ExperimentConfig, seed: u64) -> Result<PreparedData> {
    let (pair, truth, description) = match &config.data {
        DataSource::Files { source, target } => {
            let loaded = load_pair(source, target)?;
            let description = format!("{} -> {}", source.display(), target.display());
            (loaded.pair, loaded.target_truth, description)
        }
        DataSource::Synthetic(spec) => {
            let spec = jpda_core::ShiftSpec {
                seed,
                ..spec.clone()
            };
            let generated = generate_pair(&spec)?;
            let description = format!(
                "synthetic {} {} (C={}, d={}, {} per class, seed {})",
                spec.kind, spec.magnitude, spec.classes, spec.dim, spec.n_per_class, seed
            );
            (generated.pair, Some(generated.target_labels), description)
        }
    };
    let summary = DataSummary {
        description,
        dim: pair.dim(),
        class_count: pair.class_count(),
        source_len: pair.source_len(),
        target_len: pair.target_len(),
        target_labels_present: truth.is_some(),
    };
    Ok(PreparedData {
        pair,
        truth,
        summary,
    })
}

fn raw_accuracy(data: &PreparedData) -> Result<Option<f64>> {
    let Some(truth) = &data.truth else {
        return Ok(None);
    };
    let source = data.pair.source();
    let pred = knn1_predict(
        source.features(),
        source.labels(),
        data.pair.target_features(),
    )?;
    Ok(Some(accuracy(&pred, truth)?))
}

fn run_algorithms(
    config: &ExperimentConfig,
    algorithms: &[Algorithm],
) -> Result<(RunReport, Vec<jpda_core::FitOutcome>, PreparedData)> {
    config.validate_paths()?;
    let start = Instant::now();
    let data = prepare(config, config.adapt.seed)?;
    let raw_nn_accuracy = raw_accuracy(&data)?;
    let mut results = Vec::new();
    let mut outcomes = Vec::new();
    for &algorithm in algorithms {
        let t = Instant::now();
        let outcome = fit(
            &data.pair,
            &config.adapt_for(algorithm),
            data.truth.as_deref(),
        )?;
        for w in &outcome.report.warnings {
            log::warn!("{algorithm}: {w}");
        }
        results.push(AlgorithmResult {
            algorithm,
            final_accuracy: outcome.report.final_accuracy(),
            predictions: outcome
                .pseudo_labels
                .labels()
                .iter()
                .map(|l| l + 1)
                .collect(),
            fit: outcome.report.clone(),
            seconds: t.elapsed().as_secs_f64(),
        });
        outcomes.push(outcome);
    }
    let report = RunReport {
        artifact_version: ARTIFACT_VERSION.to_string(),
        seed: config.adapt.seed,
        config: config.echo(),
        data: data.summary.clone(),
        target_label_note: TARGET_LABEL_NOTE.to_string(),
        raw_nn_accuracy,
        results,
        total_seconds: start.elapsed().as_secs_f64(),
    };
    Ok((report, outcomes, data))
}

/// Fits every configured algorithm on the configured pair.
pub fn run(config: &ExperimentConfig) -> Result<RunReport> {
    Ok(run_algorithms(config, &config.algorithms)?.0)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))
}

pub fn write_run(report: &RunReport, dir: &Path) -> Result<()> {
    ensure_dir(dir)?;
    write_json(&dir.join(REPORT_FILE), report)?;
    write_csv(&dir.join(ACCURACY_FILE), &report.accuracy_rows())
}

pub fn write_trace(report: &RunReport, dir: &Path) -> Result<()> {
    ensure_dir(dir)?;
    write_json(&dir.join(REPORT_FILE), report)?;
    write_csv(&dir.join(TRACE_FILE), &report.trace_rows())
}

/// Runs the grid `algorithms × mu × lambda × seeds` on up to `jobs` threads.
/// Cells are independent fits and come back in grid order.
pub fn sweep(config: &ExperimentConfig) -> Result<SweepReport> {
    config.validate_paths()?;
    let mut datasets = Vec::with_capacity(config.seeds.len());
    for &seed in &config.seeds {
        let data = prepare(config, seed)?;
        if data.truth.is_none() {
            return Err(HarnessError::Data(
                "sweep scores accuracy and needs target labels".into(),
            ));
        }
        let raw = raw_accuracy(&data)?.unwrap_or(f64::NAN);
        datasets.push((seed, data, raw));
    }

    let mut grid = Vec::new();
    for &algorithm in &config.algorithms {
        for &mu in &config.mu_grid {
            for &lambda in &config.lambda_grid {
                for k in 0..datasets.len() {
                    grid.push((algorithm, mu, lambda, k));
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| HarnessError::Config(format!("cannot start {} jobs: {e}", config.jobs)))?;
    let cells: Vec<SweepCell> = pool.install(|| {
        grid.par_iter()
            .map(|&(algorithm, mu, lambda, k)| {
                let (seed, data, raw) = &datasets[k];
                let cfg = jpda_core::AdaptConfig {
                    mu,
                    lambda,
                    seed: *seed,
                    ..config.adapt_for(algorithm)
                };
                let t = Instant::now();
                let outcome = fit(&data.pair, &cfg, data.truth.as_deref())?;
                Ok(SweepCell {
                    algorithm,
                    mu,
                    lambda,
                    seed: *seed,
                    accuracy: outcome.report.final_accuracy().unwrap_or(f64::NAN),
                    raw_nn_accuracy: *raw,
                    effective_p: outcome.report.effective_p,
                    seconds: t.elapsed().as_secs_f64(),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let rows = cells
        .chunks(datasets.len())
        .map(|group| {
            let accs: Vec<f64> = group.iter().map(|c| c.accuracy).collect();
            let secs: Vec<f64> = group.iter().map(|c| c.seconds).collect();
            let (mean, std) = mean_std(&accs);
            SweepRow {
                algorithm: group[0].algorithm.name().into(),
                mu: group[0].mu,
                lambda: group[0].lambda,
                seeds: group.len(),
                mean_accuracy: mean,
                std_accuracy: std,
                mean_seconds: mean_std(&secs).0,
            }
        })
        .collect();
    Ok(SweepReport {
        artifact_version: ARTIFACT_VERSION.to_string(),
        config: config.echo(),
        target_label_note: TARGET_LABEL_NOTE.to_string(),
        cells,
        rows,
    })
}

pub fn write_sweep(report: &SweepReport, dir: &Path) -> Result<()> {
    ensure_dir(dir)?;
    write_json(&dir.join(REPORT_FILE), report)?;
    write_csv(&dir.join(SWEEP_FILE), &report.rows)
}

/// Algorithm used by `embed2d`: JPDA when listed, otherwise the first one.
pub fn embedding_algorithm(config: &ExperimentConfig) -> Algorithm {
    if config.algorithms.contains(&Algorithm::Jpda) {
        Algorithm::Jpda
    } else {
        config.algorithms[0]
    }
}

/// Top-2 principal components of the projected `[source, target]` samples.
pub fn embed2d(config: &ExperimentConfig) -> Result<(Vec<EmbeddingRow>, RunReport)> {
    let algorithm = embedding_algorithm(config);
    let (report, outcomes, data) = run_algorithms(config, &[algorithm])?;
    let outcome = &outcomes[0];
    if outcome.projection.dim() < 2 {
        return Err(HarnessError::Data(format!(
            "projection has {} dimension(s) after rank reduction; embed2d needs p >= 2",
            outcome.projection.dim()
        )));
    }
    let z = outcome.projection.apply(&data.pair.stacked_features())?;
    let scores = pca2(&z)?;
    let ns = data.pair.source_len();
    let target_classes = data
        .truth
        .clone()
        .unwrap_or_else(|| outcome.pseudo_labels.labels());
    let rows = (0..scores.ncols())
        .map(|j| {
            let (domain, class) = if j < ns {
                ("source", data.pair.source().labels()[j])
            } else {
                ("target", target_classes[j - ns])
            };
            EmbeddingRow {
                pc1: scores[(0, j)],
                pc2: scores[(1, j)],
                domain: domain.into(),
                class: class + 1,
            }
        })
        .collect();
    Ok((rows, report))
}

pub fn write_embedding(rows: &[EmbeddingRow], report: &RunReport, dir: &Path) -> Result<()> {
    ensure_dir(dir)?;
    write_json(&dir.join(REPORT_FILE), report)?;
    write_csv(&dir.join(EMBEDDING_FILE), rows)
}

/// Writes the synthetic pair as `source.csv` and `target.csv` (labeled).
pub fn datagen(config: &ExperimentConfig) -> Result<(PathBuf, PathBuf)> {
    if !matches!(config.data, DataSource::Synthetic(_)) {
        return Err(HarnessError::Config(
            "datagen needs a synthetic shift, not dataset files".into(),
        ));
    }
    let data = prepare(config, config.adapt.seed)?;
    ensure_dir(&config.out)?;
    let source = config.out.join("source.csv");
    let target = config.out.join("target.csv");
    let src = data.pair.source();
    write_dataset(&source, src.features(), Some(src.labels()))?;
    write_dataset(&target, data.pair.target_features(), data.truth.as_deref())?;
    Ok((source, target))
}
