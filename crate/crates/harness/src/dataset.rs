//! Dataset CSV files.
//!
//! One sample per row: `d` feature columns followed by one integer class label
//! in `1..=C`. An optional single header row is detected by the presence of a
//! non-numeric field. Target files may omit the label column; when present,
//! target labels are used for scoring only.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use jpda_core::{validate_pair, DomainPair, LabeledDataset, Matrix};

use crate::error::{HarnessError, Result};

/// Parsed rows before they are turned into matrices.
struct RawTable {
    rows: Vec<Vec<f64>>,
    lines: Vec<u64>,
}

fn read_table(path: &Path) -> Result<RawTable> {
    let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut width: Option<usize> = None;
    for (k, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(k as u64 + 1);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, usize> = record
            .iter()
            .enumerate()
            .map(|(i, f)| f.parse::<f64>().map_err(|_| i))
            .collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if rows.is_empty() && width.is_none() => {
                // header row
                width = Some(record.len());
                continue;
            }
            Err(col) => {
                return Err(HarnessError::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("field {} ('{}') is not a number", col + 1, &record[col]),
                })
            }
        };
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(HarnessError::Parse {
                path: path.to_path_buf(),
                line,
                message: format!("field {} is not finite", pos + 1),
            });
        }
        match width {
            Some(w) if w != values.len() => {
                return Err(HarnessError::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("expected {w} fields, found {}", values.len()),
                })
            }
            _ => width = Some(values.len()),
        }
        rows.push(values);
        lines.push(line);
    }
    if rows.is_empty() {
        return Err(HarnessError::Data(format!(
            "{}: no samples (empty or header-only file)",
            path.display()
        )));
    }
    Ok(RawTable { rows, lines })
}

fn parse_label(path: &Path, line: u64, value: f64) -> Result<usize> {
    if value.fract() != 0.0 || value < 1.0 {
        return Err(HarnessError::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("label {value} is not an integer in 1..=C"),
        });
    }
    Ok(value as usize)
}

/// Features (`d × n`) and 1-based labels from a labeled file.
fn split_labeled(path: &Path, table: &RawTable) -> Result<(Matrix, Vec<usize>)> {
    let width = table.rows[0].len();
    if width < 2 {
        return Err(HarnessError::Parse {
            path: path.to_path_buf(),
            line: table.lines[0],
            message: "need at least one feature column and a label column".into(),
        });
    }
    let d = width - 1;
    let n = table.rows.len();
    let features = Matrix::from_fn(d, n, |r, c| table.rows[c][r]);
    let labels = table
        .rows
        .iter()
        .zip(&table.lines)
        .map(|(row, &line)| parse_label(path, line, row[d]))
        .collect::<Result<Vec<_>>>()?;
    Ok((features, labels))
}

/// Loads a labeled dataset; the class count is the largest label in the file.
pub fn load_dataset(path: &Path) -> Result<LabeledDataset> {
    let table = read_table(path)?;
    let (features, labels) = split_labeled(path, &table)?;
    let class_count = labels.iter().copied().max().unwrap_or(0);
    if class_count < 2 {
        return Err(HarnessError::Data(format!(
            "{}: need at least two classes, largest label is {class_count}",
            path.display()
        )));
    }
    Ok(LabeledDataset::from_one_based(
        features,
        &labels,
        class_count,
    )?)
}

/// Target features plus 1-based labels when the file carries a label column.
pub fn load_target(path: &Path, dim: usize) -> Result<(Matrix, Option<Vec<usize>>)> {
    let table = read_table(path)?;
    let width = table.rows[0].len();
    if width == dim {
        let n = table.rows.len();
        Ok((Matrix::from_fn(dim, n, |r, c| table.rows[c][r]), None))
    } else if width == dim + 1 {
        let (features, labels) = split_labeled(path, &table)?;
        Ok((features, Some(labels)))
    } else {
        Err(HarnessError::Parse {
            path: path.to_path_buf(),
            line: table.lines[0],
            message: format!(
                "target rows have {width} fields; source has {dim} features (expected {dim} or {})",
                dim + 1
            ),
        })
    }
}

/// A source/target pair loaded from disk, with 0-based target truth if present.
pub struct LoadedPair {
    pub pair: DomainPair,
    pub target_truth: Option<Vec<usize>>,
}

pub fn load_pair(source: &Path, target: &Path) -> Result<LoadedPair> {
    let src = load_dataset(source)?;
    let (xt, truth) = load_target(target, src.dim())?;
    let class_count = truth
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(0)
        .max(src.class_count());
    let src = if class_count > src.class_count() {
        LabeledDataset::new(src.features().clone(), src.labels().to_vec(), class_count)?
    } else {
        src
    };
    let target_truth = truth.map(|t| t.into_iter().map(|l| l - 1).collect());
    Ok(LoadedPair {
        pair: validate_pair(src, xt)?,
        target_truth,
    })
}

/// Writes samples in the dataset format with 1-based labels (no header).
pub fn write_dataset(path: &Path, features: &Matrix, labels: Option<&[usize]>) -> Result<()> {
    let mut out =
        std::io::BufWriter::new(File::create(path).map_err(|e| HarnessError::io(path, e))?);
    for j in 0..features.ncols() {
        let mut fields: Vec<String> = features
            .column(j)
            .iter()
            .map(|v| format!("{v:e}"))
            .collect();
        if let Some(labels) = labels {
            fields.push((labels[j] + 1).to_string());
        }
        writeln!(out, "{}", fields.join(",")).map_err(|e| HarnessError::io(path, e))?;
    }
    out.flush().map_err(|e| HarnessError::io(path, e))
}
