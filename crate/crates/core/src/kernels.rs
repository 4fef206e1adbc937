//! Feature maps for the kernelized objective.
//!
//! `Primal` means no kernel at all: the solvers work on the raw `d × n`
//! features. `Linear` and `Rbf` replace the features by the `n × n` Gram matrix
//! of the stacked source and target samples.

use serde::{Deserialize, Serialize};

use crate::datagen::CounterRng;
use crate::error::{Error, Result};
use crate::Matrix;

const MAX_BANDWIDTH_PAIRS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Primal,
    Linear,
    Rbf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bandwidth {
    /// Median pairwise distance of the training samples, resolved at fit time.
    Median,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub bandwidth: Bandwidth,
}

impl KernelSpec {
    pub fn primal() -> Self {
        Self {
            kind: KernelKind::Primal,
            bandwidth: Bandwidth::Median,
        }
    }

    pub fn linear() -> Self {
        Self {
            kind: KernelKind::Linear,
            bandwidth: Bandwidth::Median,
        }
    }

    pub fn rbf(bandwidth: Bandwidth) -> Self {
        Self {
            kind: KernelKind::Rbf,
            bandwidth,
        }
    }

    pub fn is_primal(&self) -> bool {
        self.kind == KernelKind::Primal
    }

    pub fn validate(&self) -> Result<()> {
        match (self.kind, self.bandwidth) {
            (KernelKind::Rbf, Bandwidth::Fixed(s)) if !(s > 0.0 && s.is_finite()) => Err(
                Error::Bandwidth(format!("rbf bandwidth must be positive, got {s}")),
            ),
            _ => Ok(()),
        }
    }

    /// Replaces a median sentinel with the value computed from `x`.
    pub fn resolved(&self, x: &Matrix, seed: u64) -> Result<Self> {
        match (self.kind, self.bandwidth) {
            (KernelKind::Rbf, Bandwidth::Median) => {
                Ok(Self::rbf(Bandwidth::Fixed(resolve_bandwidth(x, seed)?)))
            }
            _ => Ok(*self),
        }
    }
}

impl std::fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.kind, self.bandwidth) {
            (KernelKind::Primal, _) => f.write_str("primal"),
            (KernelKind::Linear, _) => f.write_str("linear"),
            (KernelKind::Rbf, Bandwidth::Median) => f.write_str("rbf"),
            (KernelKind::Rbf, Bandwidth::Fixed(s)) => write!(f, "rbf:{s}"),
        }
    }
}

impl std::str::FromStr for KernelSpec {
    type Err = Error;

    /// Accepts `primal`, `linear`, `rbf` (median heuristic) or `rbf:<sigma>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let spec = match s.split_once(':') {
            None if s == "primal" => Self::primal(),
            None if s == "linear" => Self::linear(),
            None if s == "rbf" => Self::rbf(Bandwidth::Median),
            Some(("rbf", "median")) => Self::rbf(Bandwidth::Median),
            Some(("rbf", sigma)) => {
                let sigma: f64 = sigma
                    .parse()
                    .map_err(|_| Error::InvalidConfig(format!("bad rbf bandwidth '{sigma}'")))?;
                Self::rbf(Bandwidth::Fixed(sigma))
            }
            _ => return Err(Error::InvalidConfig(format!("unknown kernel '{s}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Gram matrix between the columns of `x` (`d × n`) and `z` (`d × m`).
pub fn gram(x: &Matrix, z: &Matrix, spec: &KernelSpec) -> Result<Matrix> {
    if x.nrows() != z.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "gram: {} vs {} feature rows",
            x.nrows(),
            z.nrows()
        )));
    }
    match spec.kind {
        KernelKind::Primal => Err(Error::InvalidConfig(
            "primal kernel has no Gram matrix; use the features directly".into(),
        )),
        KernelKind::Linear => Ok(x.transpose() * z),
        KernelKind::Rbf => {
            let sigma = match spec.bandwidth {
                Bandwidth::Fixed(s) if s > 0.0 && s.is_finite() => s,
                Bandwidth::Fixed(s) => {
                    return Err(Error::Bandwidth(format!("non-positive bandwidth {s}")))
                }
                Bandwidth::Median => {
                    return Err(Error::Bandwidth("median bandwidth not resolved".into()))
                }
            };
            let scale = 1.0 / (2.0 * sigma * sigma);
            // ‖x‖² + ‖z‖² − 2xᵀz, clamped at zero against cancellation
            let xn: Vec<f64> = x.column_iter().map(|c| c.norm_squared()).collect();
            let zn: Vec<f64> = z.column_iter().map(|c| c.norm_squared()).collect();
            let mut k = x.transpose() * z;
            for j in 0..k.ncols() {
                for i in 0..k.nrows() {
                    let d2 = (xn[i] + zn[j] - 2.0 * k[(i, j)]).max(0.0);
                    k[(i, j)] = (-d2 * scale).exp();
                }
            }
            Ok(k)
        }
    }
}

/// Median pairwise Euclidean distance between the columns of `x`.
///
/// All pairs are used when there are at most 1000 of them; otherwise 1000
/// pairs are drawn with the seeded counter generator.
pub fn resolve_bandwidth(x: &Matrix, seed: u64) -> Result<f64> {
    let n = x.ncols();
    if n < 2 {
        return Err(Error::Bandwidth("need at least two samples".into()));
    }
    let dist = |i: usize, j: usize| (x.column(i) - x.column(j)).norm();
    let total_pairs = n * (n - 1) / 2;
    let mut d: Vec<f64> = if total_pairs <= MAX_BANDWIDTH_PAIRS {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| dist(i, j))
            .collect()
    } else {
        let mut rng = CounterRng::new(seed);
        let mut out = Vec::with_capacity(MAX_BANDWIDTH_PAIRS);
        while out.len() < MAX_BANDWIDTH_PAIRS {
            let i = rng.next_below(n as u64) as usize;
            let j = rng.next_below(n as u64) as usize;
            if i != j {
                out.push(dist(i, j));
            }
        }
        out
    };
    d.sort_by(f64::total_cmp);
    let mid = d.len() / 2;
    let median = if d.len() % 2 == 1 {
        d[mid]
    } else {
        0.5 * (d[mid - 1] + d[mid])
    };
    if median > 0.0 && median.is_finite() {
        Ok(median)
    } else {
        Err(Error::Bandwidth(
            "median pairwise distance is zero (points coincide)".into(),
        ))
    }
}
