//! Seeded synthetic two-domain generators.
//!
//! Both domains hold `n_per_class` samples of each of `C` unit-covariance
//! Gaussian clusters whose centers form a regular simplex with side
//! [`CLUSTER_SPACING`], centered at the origin and spanning the first `C − 1`
//! coordinates. The target domain is the source distribution under a shift:
//!
//! * `rotation`: every sample is rotated by `magnitude` degrees in each of the
//!   coordinate planes (0,1), (2,3), …; an odd trailing coordinate is left alone.
//! * `mean_offset`: every sample is translated by `magnitude` along the
//!   diagonal direction `(1, …, 1)/√d`.
//! * `class_swap_noise`: with probability `magnitude` a target sample of class
//!   `c` is drawn from cluster `(c + 1) mod C` instead (its true label stays `c`).
//!
//! # Random stream
//!
//! All randomness comes from [`CounterRng`], a SplitMix64 counter generator:
//! the `k`-th output (k = 1, 2, …) is `mix(seed + k · 0x9E3779B97F4A7C15)`
//! with the standard SplitMix64 finalizer. Gaussians use Box–Muller on two
//! consecutive outputs `a, b`: `u1 = ((a >> 11) + 1) · 2⁻⁵³`,
//! `u2 = (b >> 11) · 2⁻⁵³`, emitting `r·cos(2πu2)` and then `r·sin(2πu2)`
//! with `r = √(−2 ln u1)`. Samples are drawn source first, then target; within
//! a domain class by class, and within a sample the noise decision (only for
//! `class_swap_noise`, one uniform `(a >> 11) · 2⁻⁵³ < magnitude`) precedes the
//! `d` Gaussian coordinates. A sample's Gaussian coordinates are always
//! consumed in pairs, so a pending odd output is discarded at sample end.

use serde::{Deserialize, Serialize};

use crate::classify::{accuracy, knn1_predict};
use crate::error::{Error, Result};
use crate::types::{validate_pair, DomainPair, LabeledDataset};
use crate::Matrix;

/// Distance between neighbouring cluster centers, in units of the cluster σ.
pub const CLUSTER_SPACING: f64 = 6.0;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 in counter form; platform independent and trivially portable.
#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
    spare: Option<f64>,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            counter: 0,
            spare: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        let mut z = self
            .seed
            .wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n` (multiply-high reduction).
    pub fn next_below(&mut self, n: u64) -> u64 {
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Drops a cached Box–Muller output so the next Gaussian starts a fresh pair.
    pub fn discard_spare(&mut self) {
        self.spare = None;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftKind {
    Rotation,
    MeanOffset,
    ClassSwapNoise,
}

impl std::str::FromStr for ShiftKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rotation" => Ok(ShiftKind::Rotation),
            "mean_offset" | "offset" => Ok(ShiftKind::MeanOffset),
            "class_swap_noise" | "noise" => Ok(ShiftKind::ClassSwapNoise),
            other => Err(Error::InvalidConfig(format!(
                "unknown shift kind '{other}'"
            ))),
        }
    }
}

impl std::fmt::Display for ShiftKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ShiftKind::Rotation => "rotation",
            ShiftKind::MeanOffset => "mean_offset",
            ShiftKind::ClassSwapNoise => "class_swap_noise",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftSpec {
    pub kind: ShiftKind,
    /// Degrees for rotation, distance for offset, flip probability for noise.
    pub magnitude: f64,
    pub n_per_class: usize,
    pub classes: usize,
    pub dim: usize,
    pub seed: u64,
}

impl ShiftSpec {
    /// The rotated-Gaussians task used throughout the tests and benchmarks.
    pub fn rotation(degrees: f64, seed: u64) -> Self {
        Self {
            kind: ShiftKind::Rotation,
            magnitude: degrees,
            n_per_class: 67,
            classes: 3,
            dim: 10,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.classes * self.n_per_class == 0 {
            return Err(Error::InvalidConfig(
                "shift spec needs at least one class and one sample per class".into(),
            ));
        }
        if self.classes < 2 {
            return Err(Error::InvalidConfig("need at least two classes".into()));
        }
        if self.dim + 1 < self.classes {
            return Err(Error::InvalidConfig(format!(
                "a {}-class simplex needs dim >= {}",
                self.classes,
                self.classes - 1
            )));
        }
        let m = self.magnitude;
        let ok = match self.kind {
            ShiftKind::Rotation => (0.0..180.0).contains(&m),
            ShiftKind::MeanOffset => m.is_finite() && m >= 0.0,
            ShiftKind::ClassSwapNoise => (0.0..=1.0).contains(&m),
        };
        if !ok {
            return Err(Error::InvalidConfig(format!(
                "magnitude {m} out of range for {}",
                self.kind
            )));
        }
        Ok(())
    }
}

/// Generator output plus the metadata needed to cross-check it.
#[derive(Debug, Clone)]
pub struct SyntheticPair {
    pub pair: DomainPair,
    /// 0-based ground truth for the target; never handed to the solvers.
    pub target_labels: Vec<usize>,
    /// Empirical per-class means, `d × C`.
    pub source_class_means: Matrix,
    pub target_class_means: Matrix,
    /// Cross-domain 1-NN accuracy on the raw features.
    pub raw_nn_accuracy: f64,
}

/// Centers of a regular simplex with side [`CLUSTER_SPACING`] (`d × C`).
///
/// Vertex `c` is `s·e_c` in `R^C` with `s = spacing/√2`, expressed in the
/// Helmert basis of the sum-zero hyperplane, so its `k`-th coordinate is
/// `s·h_k[c]`.
pub fn simplex_centers(classes: usize, dim: usize) -> Matrix {
    let s = CLUSTER_SPACING / 2f64.sqrt();
    Matrix::from_fn(dim, classes, |k, c| {
        if k + 1 >= classes {
            return 0.0;
        }
        let k1 = (k + 1) as f64;
        let norm = (k1 * (k1 + 1.0)).sqrt();
        let h = if c <= k {
            1.0
        } else if c == k + 1 {
            -k1
        } else {
            0.0
        };
        s * h / norm
    })
}

fn rotate_in_place(x: &mut Matrix, degrees: f64) {
    let (sin, cos) = degrees.to_radians().sin_cos();
    for mut col in x.column_iter_mut() {
        let mut k = 0;
        while k + 1 < col.len() {
            let (a, b) = (col[k], col[k + 1]);
            col[k] = cos * a - sin * b;
            col[k + 1] = sin * a + cos * b;
            k += 2;
        }
    }
}

pub fn generate_pair(spec: &ShiftSpec) -> Result<SyntheticPair> {
    spec.validate()?;
    let (c_count, d, m) = (spec.classes, spec.dim, spec.n_per_class);
    let n = c_count * m;
    let centers = simplex_centers(c_count, d);
    let mut rng = CounterRng::new(spec.seed);

    let mut draw_domain = |is_target: bool| {
        let mut x = Matrix::zeros(d, n);
        let mut labels = Vec::with_capacity(n);
        for c in 0..c_count {
            for i in 0..m {
                let mut cluster = c;
                if is_target
                    && spec.kind == ShiftKind::ClassSwapNoise
                    && rng.next_f64() < spec.magnitude
                {
                    cluster = (c + 1) % c_count;
                }
                let j = c * m + i;
                for r in 0..d {
                    x[(r, j)] = centers[(r, cluster)] + rng.next_gaussian();
                }
                rng.discard_spare();
                labels.push(c);
            }
        }
        (x, labels)
    };
    let (xs, ys) = draw_domain(false);
    let (mut xt, yt) = draw_domain(true);
    match spec.kind {
        ShiftKind::Rotation => rotate_in_place(&mut xt, spec.magnitude),
        ShiftKind::MeanOffset => {
            let step = spec.magnitude / (d as f64).sqrt();
            xt.add_scalar_mut(step);
        }
        ShiftKind::ClassSwapNoise => {}
    }

    let class_means = |x: &Matrix| {
        let mut means = Matrix::zeros(d, c_count);
        for c in 0..c_count {
            let block = x.columns(c * m, m);
            means.set_column(c, &(block.column_sum() / m as f64));
        }
        means
    };
    let source_class_means = class_means(&xs);
    let target_class_means = class_means(&xt);
    let raw_nn_accuracy = accuracy(&knn1_predict(&xs, &ys, &xt)?, &yt)?;
    let source = LabeledDataset::new(xs, ys, c_count)?;
    Ok(SyntheticPair {
        pair: validate_pair(source, xt)?,
        target_labels: yt,
        source_class_means,
        target_class_means,
        raw_nn_accuracy,
    })
}
