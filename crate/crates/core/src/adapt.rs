//! Subspace solvers: JPDA and the weighted marginal/conditional MMD family
//! (TCA, JDA, BDA), in primal and kernelized form.
//!
//! Every solver runs the same loop. Target pseudo-labels start from 1-NN on
//! the raw features; each iteration builds the algorithm's `n × n` coefficient
//! matrix `M` from the current pseudo-labels, solves
//! `(Φ M Φᵀ + λI) a = η Φ H Φᵀ a` for the `p` trailing eigenvectors (`Φ` is
//! `X` in primal form and the Gram matrix `K` otherwise) and relabels the
//! target with 1-NN in the projected space.

use std::time::Instant;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::classify::{accuracy, knn1_predict};
use crate::eigensolve::{solve_trailing, symmetrize, SymmetricPencil};
use crate::error::{Error, Result};
use crate::kernels::{gram, KernelKind, KernelSpec};
use crate::mmd::{
    bda_weight, build_joint_prob_factors, clamp_trace, conditional_mmd_matrices, fill_rmax,
    fill_rmin, marginal_mmd_matrix, MmdMatrix,
};
use crate::types::{one_hot_encode, AdaptConfig, Algorithm, DomainPair, OneHotMatrix};
use crate::Matrix;

/// Relative eigenvalue threshold below which a direction of `ΦHΦᵀ` counts as null.
pub const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Primal,
    Kernel,
}

/// Learned mapping `z = Aᵀx` (primal) or `z = Aᵀ k(anchor, x)` (kernel).
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub basis: BasisKind,
    /// `d × p` (primal) or `n × p` (kernel).
    pub matrix: Matrix,
    /// Training samples the kernel expansion is anchored to (`d × n`).
    pub anchor: Option<Matrix>,
    /// Kernel with any median bandwidth already resolved.
    pub kernel: KernelSpec,
}

impl Projection {
    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    /// Projects new samples (`d × m`) into the learned `p`-dimensional subspace.
    pub fn apply(&self, x_new: &Matrix) -> Result<Matrix> {
        match (self.basis, &self.anchor) {
            (BasisKind::Primal, _) => {
                if x_new.nrows() != self.matrix.nrows() {
                    return Err(Error::DimensionMismatch(format!(
                        "projection expects {} features, got {}",
                        self.matrix.nrows(),
                        x_new.nrows()
                    )));
                }
                Ok(self.matrix.transpose() * x_new)
            }
            (BasisKind::Kernel, Some(anchor)) => {
                let k = gram(anchor, x_new, &self.kernel)?;
                Ok(self.matrix.transpose() * k)
            }
            (BasisKind::Kernel, None) => Err(Error::InvalidConfig(
                "kernel projection has no anchor samples".into(),
            )),
        }
    }
}

/// Projects `x_new` with `proj`, checking that `spec` names the same feature map.
pub fn transform(proj: &Projection, x_new: &Matrix, spec: &KernelSpec) -> Result<Matrix> {
    let expected = if spec.is_primal() {
        BasisKind::Primal
    } else {
        BasisKind::Kernel
    };
    if expected != proj.basis || spec.kind != proj.kernel.kind {
        return Err(Error::InvalidConfig(format!(
            "projection was fitted with the {} kernel, asked to apply {}",
            proj.kernel, spec
        )));
    }
    proj.apply(x_new)
}

/// One pseudo-label refinement step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    /// 0-based target labels produced by this iteration.
    pub pseudo_labels: Vec<usize>,
    /// Target accuracy of `pseudo_labels`, when ground truth was supplied.
    pub accuracy: Option<f64>,
    /// `tr(AᵀΦ R_min ΦᵀA)` with the pseudo-labels the step was fitted on.
    pub transfer_term: f64,
    /// `tr(AᵀΦ R_max ΦᵀA)` with the same pseudo-labels.
    pub discriminative_term: f64,
    /// `tr(Aᵀ S A)` of the pencil that was solved.
    pub objective: f64,
    /// BDA balance weight used in this step.
    pub bda_mu: Option<f64>,
    /// `‖AᵀΦHΦᵀA − I‖_max`.
    pub constraint_error: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimes {
    pub mmd_seconds: f64,
    pub eigen_seconds: f64,
    pub classify_seconds: f64,
    pub total_seconds: f64,
}

/// Per-iteration trace of a fit. Timings are kept apart from the records so
/// the records are reproducible byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub algorithm: Algorithm,
    pub requested_p: usize,
    pub effective_p: usize,
    pub ridge: f64,
    /// Accuracy of the raw-feature 1-NN initialization.
    pub initial_accuracy: Option<f64>,
    pub records: Vec<IterationRecord>,
    pub iteration_seconds: Vec<f64>,
    pub stages: StageTimes,
    pub warnings: Vec<String>,
}

impl FitReport {
    pub fn final_accuracy(&self) -> Option<f64> {
        self.records.last().and_then(|r| r.accuracy)
    }
}

#[derive(Debug, Clone)]
pub struct FitOutcome {
    pub projection: Projection,
    pub pseudo_labels: OneHotMatrix,
    pub report: FitReport,
}

/// Weights of the marginal and conditional terms in `μ₁M₀ + μ₂Σ_cM_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MmdWeights {
    Fixed {
        marginal: f64,
        conditional: f64,
    },
    /// A-distance balance `(1 − μ, μ)`; `forced_mu` bypasses the estimate.
    Bda {
        freeze: bool,
        forced_mu: Option<f64>,
    },
}

impl MmdWeights {
    pub const TCA: MmdWeights = MmdWeights::Fixed {
        marginal: 1.0,
        conditional: 0.0,
    };
    pub const JDA: MmdWeights = MmdWeights::Fixed {
        marginal: 1.0,
        conditional: 1.0,
    };
}

/// `I_n − (1/n)·1 1ᵀ`.
pub fn centering_matrix(n: usize) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::Empty("centering matrix"));
    }
    let off = 1.0 / n as f64;
    Ok(Matrix::from_fn(
        n,
        n,
        |i, j| {
            if i == j {
                1.0 - off
            } else {
                -off
            }
        },
    ))
}

/// Runs the solver selected by `config.algorithm`. TCA is a single iteration.
pub fn fit(pair: &DomainPair, config: &AdaptConfig, truth: Option<&[usize]>) -> Result<FitOutcome> {
    match config.algorithm {
        Algorithm::Jpda | Algorithm::Jp => jpda_fit(pair, config, truth),
        Algorithm::Tca => {
            let cfg = AdaptConfig {
                iterations: 1,
                ..config.clone()
            };
            weighted_fit(pair, &cfg, MmdWeights::TCA, truth)
        }
        Algorithm::Jda => weighted_fit(pair, config, MmdWeights::JDA, truth),
        Algorithm::Bda => weighted_fit(
            pair,
            config,
            MmdWeights::Bda {
                freeze: config.freeze_bda_mu,
                forced_mu: None,
            },
            truth,
        ),
    }
}

/// JPDA: minimizes the same-class joint-probability MMD minus `μ` times the
/// cross-class one. `Algorithm::Jp` runs with `μ = 0`.
pub fn jpda_fit(
    pair: &DomainPair,
    config: &AdaptConfig,
    truth: Option<&[usize]>,
) -> Result<FitOutcome> {
    if !config.algorithm.is_joint_probability() {
        return Err(Error::InvalidConfig(format!(
            "jpda_fit cannot run {}",
            config.algorithm
        )));
    }
    let mu = if config.algorithm == Algorithm::Jp {
        0.0
    } else {
        config.mu
    };
    run_loop(pair, config, truth, |ctx, coefficients, _| {
        if mu == 0.0 {
            coefficients.copy_from(ctx.rmin.as_matrix());
        } else {
            coefficients.zip_zip_apply(ctx.rmin.as_matrix(), ctx.rmax.as_matrix(), |c, a, b| {
                *c = a - mu * b
            });
        }
        Ok(None)
    })
}

/// Weighted marginal + conditional MMD: TCA `(1, 0)`, JDA `(1, 1)`, BDA
/// `(1 − μ, μ)` with `μ` from the A-distance.
pub fn weighted_fit(
    pair: &DomainPair,
    config: &AdaptConfig,
    weights: MmdWeights,
    truth: Option<&[usize]>,
) -> Result<FitOutcome> {
    if let MmdWeights::Fixed {
        marginal,
        conditional,
    } = weights
    {
        if !(marginal >= 0.0 && conditional >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "MMD weights must be >= 0, got ({marginal}, {conditional})"
            )));
        }
    }
    let marginal = marginal_mmd_matrix(pair.source_len(), pair.target_len())?;
    let mut frozen_mu: Option<f64> = None;
    let mut conditional_buf: Option<Matrix> = None;
    run_loop(pair, config, truth, |ctx, coefficients, warnings| {
        let (w_marginal, w_conditional, bda_mu) = match weights {
            MmdWeights::Fixed {
                marginal,
                conditional,
            } => (marginal, conditional, None),
            MmdWeights::Bda {
                forced_mu: Some(mu),
                ..
            } => (1.0 - mu, mu, Some(mu)),
            MmdWeights::Bda { freeze, .. } => {
                let mu = match frozen_mu {
                    Some(mu) => mu,
                    None => {
                        let w = bda_weight(pair, ctx.pseudo)?;
                        if w.fallback {
                            warnings.push(format!(
                                "iteration {}: all A-distances vanished, BDA weight set to 0.5",
                                ctx.iteration
                            ));
                        }
                        if freeze {
                            frozen_mu = Some(w.mu);
                        }
                        w.mu
                    }
                };
                (1.0 - mu, mu, Some(mu))
            }
        };
        coefficients.zip_apply(marginal.as_matrix(), |c, m| *c = m * w_marginal);
        if w_conditional != 0.0 {
            let conditional = conditional_mmd_matrices(ctx.source_onehot, ctx.pseudo)?;
            let factor = conditional.factor();
            let n = factor.nrows();
            let buf = conditional_buf.get_or_insert_with(|| Matrix::zeros(n, n));
            buf.gemm(1.0, factor, &factor.transpose(), 0.0);
            coefficients.zip_apply(buf, |c, v| *c += v * w_conditional);
        }
        Ok(bda_mu)
    })
}

/// What an objective builder may look at in one iteration.
struct IterationContext<'a> {
    iteration: usize,
    source_onehot: &'a OneHotMatrix,
    pseudo: &'a OneHotMatrix,
    rmin: &'a crate::mmd::MmdMatrix,
    rmax: &'a crate::mmd::MmdMatrix,
}

/// Rank of the constraint matrix `b`; zero when its largest eigenvalue is
/// round-off relative to `energy`, the trace of the uncentered `ΦΦᵀ`.
fn effective_rank(b: &Matrix, energy: f64) -> usize {
    let values = b.clone().symmetric_eigen().eigenvalues;
    let top = values.max();
    if top.is_nan() || top <= 1e3 * f64::EPSILON * energy {
        return 0;
    }
    values.iter().filter(|&&v| v > RANK_TOLERANCE * top).count()
}

fn run_loop<F>(
    pair: &DomainPair,
    config: &AdaptConfig,
    truth: Option<&[usize]>,
    mut coefficients_for: F,
) -> Result<FitOutcome>
where
    F: FnMut(&IterationContext<'_>, &mut Matrix, &mut Vec<String>) -> Result<Option<f64>>,
{
    config.validate()?;
    let started = Instant::now();
    let (ns, nt) = (pair.source_len(), pair.target_len());
    let n = ns + nt;
    if let Some(t) = truth {
        if t.len() != nt {
            return Err(Error::DimensionMismatch(format!(
                "{} target truth labels for {nt} target samples",
                t.len()
            )));
        }
    }
    let c_count = pair.class_count();
    let source_labels = pair.source().labels();
    let source_onehot = pair.source().one_hot();
    let x = pair.stacked_features();

    let kernel = config.kernel.resolved(&x, config.seed)?;
    let (basis, data) = match kernel.kind {
        KernelKind::Primal => (BasisKind::Primal, x.clone()),
        KernelKind::Linear | KernelKind::Rbf => (BasisKind::Kernel, gram(&x, &x, &kernel)?),
    };
    let m = data.nrows();
    if basis == BasisKind::Kernel && config.p > n {
        warn!("p = {} exceeds the sample count {n}", config.p);
    }

    let h = centering_matrix(n)?;
    let constraint = symmetrize(&(&data * &h * data.transpose()));
    let ridge = config
        .ridge
        .unwrap_or_else(|| crate::eigensolve::DEFAULT_RIDGE_SCALE * constraint.trace() / m as f64);

    let mut warnings = Vec::new();
    let rank = effective_rank(&constraint, data.norm_squared());
    if rank == 0 {
        return Err(Error::Numerical(
            "centered data has zero variance; the constraint matrix vanishes".into(),
        ));
    }
    let p = config.p.min(rank).min(m);
    if p < config.p {
        warnings.push(format!(
            "p reduced from {} to {p} (rank of the centered constraint matrix)",
            config.p
        ));
    }

    let mut stages = StageTimes::default();
    let t0 = Instant::now();
    let mut current = knn1_predict(
        pair.source().features(),
        source_labels,
        pair.target_features(),
    )?;
    stages.classify_seconds += t0.elapsed().as_secs_f64();
    let initial_accuracy = truth.map(|t| accuracy(&current, t)).transpose()?;

    let mut records = Vec::with_capacity(config.iterations);
    let mut iteration_seconds = Vec::with_capacity(config.iterations);
    let mut projection_matrix = Matrix::zeros(m, p);
    // n × n buffers are reused across iterations; fresh allocations of this
    // size cost more in page faults than the products themselves
    let mut rmin = MmdMatrix::zeros(n, ns);
    let mut rmax = MmdMatrix::zeros(n, ns);
    let mut coefficients = Matrix::zeros(n, n);
    for iteration in 1..=config.iterations {
        let iter_start = Instant::now();
        let pseudo = one_hot_encode(&current, c_count)?;

        let t0 = Instant::now();
        let factors = build_joint_prob_factors(&source_onehot, &pseudo)?;
        fill_rmin(&factors, &mut rmin);
        fill_rmax(&factors, &mut rmax);
        let ctx = IterationContext {
            iteration,
            source_onehot: &source_onehot,
            pseudo: &pseudo,
            rmin: &rmin,
            rmax: &rmax,
        };
        let bda_mu = coefficients_for(&ctx, &mut coefficients, &mut warnings)?;
        stages.mmd_seconds += t0.elapsed().as_secs_f64();

        let t0 = Instant::now();
        let mut s = &data * &coefficients * data.transpose();
        for i in 0..m {
            s[(i, i)] += config.lambda;
        }
        let pencil = SymmetricPencil::new(symmetrize(&s), constraint.clone())?;
        let eig = solve_trailing(&pencil, p, ridge)?;
        stages.eigen_seconds += t0.elapsed().as_secs_f64();
        let a = eig.vectors;

        let t0 = Instant::now();
        let z = a.transpose() * &data;
        let zs = z.columns(0, ns).into_owned();
        let zt = z.columns(ns, nt).into_owned();
        let next = knn1_predict(&zs, source_labels, &zt)?;
        stages.classify_seconds += t0.elapsed().as_secs_f64();

        if next.iter().all(|&l| l == next[0]) && c_count > 1 {
            let msg = format!(
                "iteration {iteration}: pseudo-labels collapsed to class {}",
                next[0] + 1
            );
            warn!("{msg}");
            warnings.push(msg);
        }
        let gram_err = (a.transpose() * &constraint * &a - Matrix::identity(p, p)).amax();
        records.push(IterationRecord {
            iteration,
            accuracy: truth.map(|t| accuracy(&next, t)).transpose()?,
            pseudo_labels: next.clone(),
            transfer_term: clamp_trace(&z, rmin.as_matrix()),
            discriminative_term: clamp_trace(&z, rmax.as_matrix()),
            objective: (a.transpose() * pencil.s() * &a).trace(),
            bda_mu,
            constraint_error: gram_err,
        });
        iteration_seconds.push(iter_start.elapsed().as_secs_f64());
        projection_matrix = a;
        current = next;
    }
    stages.total_seconds = started.elapsed().as_secs_f64();

    let projection = Projection {
        basis,
        matrix: projection_matrix,
        anchor: (basis == BasisKind::Kernel).then_some(x),
        kernel,
    };
    Ok(FitOutcome {
        projection,
        pseudo_labels: one_hot_encode(&current, c_count)?,
        report: FitReport {
            algorithm: config.algorithm,
            requested_p: config.p,
            effective_p: p,
            ridge,
            initial_accuracy,
            records,
            iteration_seconds,
            stages,
            warnings,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::{generate_pair, CounterRng, ShiftSpec};
    use crate::kernels::Bandwidth;
    use crate::types::{validate_pair, LabeledDataset};

    #[test]
    fn centering_small() {
        assert_eq!(centering_matrix(1).unwrap(), Matrix::zeros(1, 1));
        assert_eq!(
            centering_matrix(2).unwrap(),
            Matrix::from_row_slice(2, 2, &[0.5, -0.5, -0.5, 0.5])
        );
        assert!(centering_matrix(0).is_err());
    }

    #[test]
    fn centering_is_idempotent() {
        let h = centering_matrix(5).unwrap();
        assert!((&h * &h - &h).amax() < 1e-14);
        assert!(h.column_sum().amax() < 1e-15);
        assert_eq!(h, h.transpose());
    }

    fn small_pair(seed: u64) -> (DomainPair, Vec<usize>) {
        let spec = ShiftSpec {
            n_per_class: 20,
            dim: 4,
            ..ShiftSpec::rotation(15.0, seed)
        };
        let g = generate_pair(&spec).unwrap();
        (g.pair, g.target_labels)
    }

    fn config(algorithm: Algorithm) -> AdaptConfig {
        AdaptConfig {
            algorithm,
            p: 3,
            iterations: 3,
            ..AdaptConfig::default()
        }
    }

    #[test]
    fn identical_domains_are_a_fixed_point() {
        let (pair, _) = small_pair(1);
        let truth = pair.source().labels().to_vec();
        let same = validate_pair(pair.source().clone(), pair.source().features().clone()).unwrap();
        for algo in Algorithm::ALL {
            let out = fit(&same, &config(algo), Some(&truth)).unwrap();
            assert_eq!(out.report.final_accuracy(), Some(1.0), "{algo}");
            assert_eq!(out.pseudo_labels.labels(), truth);
            assert!(out.report.records.last().unwrap().transfer_term <= 1e-8);
        }
    }

    #[test]
    fn jp_equals_jpda_with_zero_mu() {
        let (pair, truth) = small_pair(2);
        let jp = jpda_fit(&pair, &config(Algorithm::Jp), Some(&truth)).unwrap();
        let zero = AdaptConfig {
            mu: 0.0,
            ..config(Algorithm::Jpda)
        };
        let jpda = jpda_fit(&pair, &zero, Some(&truth)).unwrap();
        assert_eq!(jp.projection, jpda.projection);
        assert_eq!(jp.report.records, jpda.report.records);
    }

    #[test]
    fn bda_forced_half_equals_fixed_weights() {
        let (pair, truth) = small_pair(3);
        let cfg = config(Algorithm::Bda);
        let forced = weighted_fit(
            &pair,
            &cfg,
            MmdWeights::Bda {
                freeze: false,
                forced_mu: Some(0.5),
            },
            Some(&truth),
        )
        .unwrap();
        let fixed = weighted_fit(
            &pair,
            &cfg,
            MmdWeights::Fixed {
                marginal: 0.5,
                conditional: 0.5,
            },
            Some(&truth),
        )
        .unwrap();
        assert_eq!(forced.projection, fixed.projection);
        for (a, b) in forced.report.records.iter().zip(&fixed.report.records) {
            assert_eq!(a.pseudo_labels, b.pseudo_labels);
            assert_eq!(a.objective.to_bits(), b.objective.to_bits());
        }
    }

    #[test]
    fn bda_freeze_keeps_weight() {
        let (pair, truth) = small_pair(4);
        let cfg = AdaptConfig {
            freeze_bda_mu: true,
            ..config(Algorithm::Bda)
        };
        let out = fit(&pair, &cfg, Some(&truth)).unwrap();
        let mus: Vec<f64> = out
            .report
            .records
            .iter()
            .map(|r| r.bda_mu.unwrap())
            .collect();
        assert!(mus.iter().all(|&m| m == mus[0]));
        assert!((0.0..=1.0).contains(&mus[0]));
    }

    #[test]
    fn tca_runs_once() {
        let (pair, truth) = small_pair(5);
        let out = fit(&pair, &config(Algorithm::Tca), Some(&truth)).unwrap();
        assert_eq!(out.report.records.len(), 1);
    }

    #[test]
    fn records_are_deterministic() {
        let (pair, truth) = small_pair(6);
        let a = fit(&pair, &config(Algorithm::Jpda), Some(&truth)).unwrap();
        let b = fit(&pair, &config(Algorithm::Jpda), Some(&truth)).unwrap();
        assert_eq!(a.report.records, b.report.records);
        assert_eq!(a.projection, b.projection);
    }

    #[test]
    fn terms_nonnegative_and_constraint_holds() {
        let (pair, truth) = small_pair(7);
        for algo in Algorithm::ALL {
            let out = fit(&pair, &config(algo), Some(&truth)).unwrap();
            for r in &out.report.records {
                assert!(r.transfer_term >= 0.0 && r.discriminative_term >= 0.0);
                assert!(r.constraint_error <= 1e-4, "{algo}: {}", r.constraint_error);
            }
        }
    }

    #[test]
    fn p_is_reduced_to_rank() {
        let (pair, truth) = small_pair(8);
        let cfg = AdaptConfig {
            p: 100,
            ..config(Algorithm::Jpda)
        };
        let out = fit(&pair, &cfg, Some(&truth)).unwrap();
        assert_eq!(out.report.effective_p, 4);
        assert_eq!(out.projection.dim(), 4);
        assert!(out.report.warnings.iter().any(|w| w.contains("p reduced")));
    }

    #[test]
    fn kernel_fit_and_transform() {
        let (pair, truth) = small_pair(9);
        for kernel in [KernelSpec::linear(), KernelSpec::rbf(Bandwidth::Median)] {
            let cfg = AdaptConfig {
                kernel,
                p: 5,
                ..config(Algorithm::Jpda)
            };
            let out = fit(&pair, &cfg, Some(&truth)).unwrap();
            assert_eq!(out.projection.basis, BasisKind::Kernel);
            let x = pair.stacked_features();
            let z = transform(&out.projection, &x, &kernel).unwrap();
            let k = gram(&x, &x, &out.projection.kernel).unwrap();
            assert!((z - out.projection.matrix.transpose() * k).amax() < 1e-12);
            assert!(transform(&out.projection, &x, &KernelSpec::primal()).is_err());
        }
    }

    #[test]
    fn primal_transform_truncated_identity() {
        let proj = Projection {
            basis: BasisKind::Primal,
            matrix: Matrix::identity(4, 2),
            anchor: None,
            kernel: KernelSpec::primal(),
        };
        let x = Matrix::from_fn(4, 3, |r, c| (r * 10 + c) as f64);
        let z = transform(&proj, &x, &KernelSpec::primal()).unwrap();
        assert_eq!(z, x.rows(0, 2).into_owned());
        assert!(transform(&proj, &Matrix::zeros(3, 1), &KernelSpec::primal()).is_err());
    }

    #[test]
    fn transform_is_columnwise() {
        let mut rng = CounterRng::new(3);
        let anchor = Matrix::from_fn(3, 10, |_, _| rng.next_gaussian());
        let proj = Projection {
            basis: BasisKind::Kernel,
            matrix: Matrix::from_fn(10, 2, |_, _| rng.next_gaussian()),
            anchor: Some(anchor),
            kernel: KernelSpec::rbf(Bandwidth::Fixed(1.5)),
        };
        let xs = Matrix::from_fn(3, 4, |_, _| rng.next_gaussian());
        let xt = Matrix::from_fn(3, 6, |_, _| rng.next_gaussian());
        let mut both = Matrix::zeros(3, 10);
        both.columns_mut(0, 4).copy_from(&xs);
        both.columns_mut(4, 6).copy_from(&xt);
        let joint = proj.apply(&both).unwrap();
        assert!((joint.columns(0, 4) - proj.apply(&xs).unwrap()).amax() < 1e-14);
        assert!((joint.columns(4, 6) - proj.apply(&xt).unwrap()).amax() < 1e-14);
    }

    #[test]
    fn rejects_wrong_algorithm_and_truth_length() {
        let (pair, truth) = small_pair(10);
        assert!(jpda_fit(&pair, &config(Algorithm::Jda), None).is_err());
        assert!(fit(&pair, &config(Algorithm::Jda), Some(&truth[..3])).is_err());
    }

    #[test]
    fn zero_variance_data_is_an_error() {
        let src = LabeledDataset::new(Matrix::zeros(2, 4), vec![0, 1, 0, 1], 2).unwrap();
        let pair = validate_pair(src, Matrix::zeros(2, 3)).unwrap();
        assert!(matches!(
            fit(&pair, &config(Algorithm::Jpda), None),
            Err(Error::Numerical(_))
        ));
    }
}
