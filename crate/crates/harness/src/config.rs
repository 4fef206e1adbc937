//! Experiment configuration: a flat `key = value` file plus command-line
//! overrides (overrides win). Every report echoes the effective configuration
//! in the same format so a run can be replayed from its report.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use jpda_core::{AdaptConfig, Algorithm, KernelSpec, ShiftKind, ShiftSpec};

use crate::error::{HarnessError, Result};

pub const PRESET_OFFICE_CALTECH: &str = "office-caltech";

/// Key order of the echoed configuration.
const KEYS: &[&str] = &[
    "preset",
    "source",
    "target",
    "shift",
    "magnitude",
    "n_per_class",
    "classes",
    "dim",
    "algorithm",
    "p",
    "T",
    "mu",
    "lambda",
    "kernel",
    "ridge",
    "seed",
    "freeze_bda_mu",
    "mu_grid",
    "lambda_grid",
    "seeds",
    "jobs",
    "out",
];

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Files { source: PathBuf, target: PathBuf },
    Synthetic(ShiftSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub preset: Option<String>,
    pub data: DataSource,
    pub algorithms: Vec<Algorithm>,
    /// Shared solver settings; `algorithm` is overwritten per run.
    pub adapt: AdaptConfig,
    pub mu_grid: Vec<f64>,
    pub lambda_grid: Vec<f64>,
    pub seeds: Vec<u64>,
    pub jobs: usize,
    pub out: PathBuf,
}

/// Raw key/value pairs in application order.
pub type Overrides = Vec<(String, String)>;

fn config_err(msg: impl Into<String>) -> HarnessError {
    HarnessError::Config(msg.into())
}

pub fn parse_kv_text(text: &str) -> Result<Overrides> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| config_err(format!("line {}: expected key = value", k + 1)))?;
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| config_err(format!("{key}: cannot parse '{value}'")))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| parse(key, v))
        .collect()
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(config_err(format!(
            "{key}: expected a boolean, got '{value}'"
        ))),
    }
}

fn fmt_list<T: std::fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl ExperimentConfig {
    /// Reads an optional config file, then applies `overrides` on top.
    pub fn load(file: Option<&Path>, overrides: &[(String, String)]) -> Result<Self> {
        let mut pairs = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
                parse_kv_text(&text)?
            }
            None => Vec::new(),
        };
        pairs.extend(overrides.iter().cloned());
        Self::from_pairs(&pairs)
    }

    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let mut map: BTreeMap<&str, &str> = BTreeMap::new();
        for (k, v) in pairs {
            let key = KEYS
                .iter()
                .find(|known| known.eq_ignore_ascii_case(k))
                .ok_or_else(|| config_err(format!("unknown key '{k}'")))?;
            map.insert(key, v.as_str());
        }

        let mut adapt = AdaptConfig::default();
        let preset = map.get("preset").map(|s| s.to_string());
        match preset.as_deref() {
            None | Some("") | Some("default") => {}
            Some(PRESET_OFFICE_CALTECH) => {
                adapt.lambda = 1.0;
                adapt.kernel = KernelSpec::linear();
            }
            Some(other) => return Err(config_err(format!("unknown preset '{other}'"))),
        }

        let algorithms = match map.get("algorithm") {
            Some(v) => v
                .split(',')
                .map(|a| a.parse::<Algorithm>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| config_err(e.to_string()))?,
            None => vec![
                Algorithm::Tca,
                Algorithm::Jda,
                Algorithm::Bda,
                Algorithm::Jpda,
            ],
        };
        if algorithms.is_empty() {
            return Err(config_err("algorithm list is empty"));
        }
        adapt.algorithm = algorithms[0];
        if let Some(v) = map.get("p") {
            adapt.p = parse("p", v)?;
        }
        if let Some(v) = map.get("T") {
            adapt.iterations = parse("T", v)?;
        }
        if let Some(v) = map.get("mu") {
            adapt.mu = parse("mu", v)?;
        }
        if let Some(v) = map.get("lambda") {
            adapt.lambda = parse("lambda", v)?;
        }
        if let Some(v) = map.get("kernel") {
            adapt.kernel = v
                .parse()
                .map_err(|e: jpda_core::Error| config_err(e.to_string()))?;
        }
        if let Some(v) = map.get("ridge") {
            adapt.ridge = match *v {
                "" | "auto" => None,
                v => Some(parse("ridge", v)?),
            };
        }
        if let Some(v) = map.get("seed") {
            adapt.seed = parse("seed", v)?;
        }
        if let Some(v) = map.get("freeze_bda_mu") {
            adapt.freeze_bda_mu = parse_bool("freeze_bda_mu", v)?;
        }
        adapt.validate().map_err(|e| config_err(e.to_string()))?;

        let data = match (map.get("source"), map.get("target"), map.get("shift")) {
            (Some(s), Some(t), _) => DataSource::Files {
                source: PathBuf::from(s),
                target: PathBuf::from(t),
            },
            (Some(_), None, _) | (None, Some(_), _) => {
                return Err(config_err("source and target must be given together"))
            }
            (None, None, Some(kind)) => {
                let base = ShiftSpec::rotation(0.0, adapt.seed);
                let spec = ShiftSpec {
                    kind: kind
                        .parse::<ShiftKind>()
                        .map_err(|e| config_err(e.to_string()))?,
                    magnitude: map
                        .get("magnitude")
                        .map_or(Ok(0.0), |v| parse("magnitude", v))?,
                    n_per_class: map
                        .get("n_per_class")
                        .map_or(Ok(base.n_per_class), |v| parse("n_per_class", v))?,
                    classes: map
                        .get("classes")
                        .map_or(Ok(base.classes), |v| parse("classes", v))?,
                    dim: map.get("dim").map_or(Ok(base.dim), |v| parse("dim", v))?,
                    seed: adapt.seed,
                };
                spec.validate().map_err(|e| config_err(e.to_string()))?;
                DataSource::Synthetic(spec)
            }
            (None, None, None) => {
                return Err(config_err(
                    "no data: give source and target files or a synthetic shift",
                ))
            }
        };

        let mu_grid = match map.get("mu_grid") {
            Some(v) => parse_list("mu_grid", v)?,
            None => vec![adapt.mu],
        };
        let lambda_grid = match map.get("lambda_grid") {
            Some(v) => parse_list("lambda_grid", v)?,
            None => vec![adapt.lambda],
        };
        let seeds = match map.get("seeds") {
            Some(v) => parse_list("seeds", v)?,
            None => vec![adapt.seed],
        };
        if mu_grid.is_empty() || lambda_grid.is_empty() || seeds.is_empty() {
            return Err(config_err("sweep grids must not be empty"));
        }
        if mu_grid.iter().any(|&m| m.is_nan() || m < 0.0)
            || lambda_grid.iter().any(|&l| l.is_nan() || l <= 0.0)
        {
            return Err(config_err(
                "mu grid values must be >= 0 and lambda grid values > 0",
            ));
        }
        let jobs = map.get("jobs").map_or(Ok(1), |v| parse("jobs", v))?;
        if jobs == 0 {
            return Err(config_err("jobs must be at least 1"));
        }
        let out = PathBuf::from(map.get("out").copied().unwrap_or("out"));
        Ok(Self {
            preset,
            data,
            algorithms,
            adapt,
            mu_grid,
            lambda_grid,
            seeds,
            jobs,
            out,
        })
    }

    /// Checks that referenced files exist.
    pub fn validate_paths(&self) -> Result<()> {
        if let DataSource::Files { source, target } = &self.data {
            for p in [source, target] {
                if !p.is_file() {
                    return Err(config_err(format!("no such file: {}", p.display())));
                }
            }
        }
        Ok(())
    }

    /// Solver settings for one algorithm.
    pub fn adapt_for(&self, algorithm: Algorithm) -> AdaptConfig {
        AdaptConfig {
            algorithm,
            ..self.adapt.clone()
        }
    }

    /// Effective configuration in the `key = value` format, one key per line.
    pub fn echo(&self) -> String {
        let mut lines: Vec<(&str, String)> = Vec::new();
        if let Some(p) = &self.preset {
            lines.push(("preset", p.clone()));
        }
        match &self.data {
            DataSource::Files { source, target } => {
                lines.push(("source", source.display().to_string()));
                lines.push(("target", target.display().to_string()));
            }
            DataSource::Synthetic(spec) => {
                lines.push(("shift", spec.kind.to_string()));
                lines.push(("magnitude", spec.magnitude.to_string()));
                lines.push(("n_per_class", spec.n_per_class.to_string()));
                lines.push(("classes", spec.classes.to_string()));
                lines.push(("dim", spec.dim.to_string()));
            }
        }
        let a = &self.adapt;
        lines.push(("algorithm", fmt_list(&self.algorithms)));
        lines.push(("p", a.p.to_string()));
        lines.push(("T", a.iterations.to_string()));
        lines.push(("mu", a.mu.to_string()));
        lines.push(("lambda", a.lambda.to_string()));
        lines.push(("kernel", a.kernel.to_string()));
        lines.push((
            "ridge",
            a.ridge
                .map_or_else(|| "auto".to_string(), |r| r.to_string()),
        ));
        lines.push(("seed", a.seed.to_string()));
        lines.push(("freeze_bda_mu", a.freeze_bda_mu.to_string()));
        lines.push(("mu_grid", fmt_list(&self.mu_grid)));
        lines.push(("lambda_grid", fmt_list(&self.lambda_grid)));
        lines.push(("seeds", fmt_list(&self.seeds)));
        lines.push(("jobs", self.jobs.to_string()));
        lines.push(("out", self.out.display().to_string()));
        lines
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}
