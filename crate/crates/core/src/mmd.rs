//! MMD coefficient matrices.
//!
//! Every matrix here is `n × n` with `n = n_s + n_t`, source rows first, and
//! every one is a Gram matrix `B Bᵀ` of a factor `B = [B_s; −B_t]`:
//!
//! | matrix        | `B_s`                 | `B_t`                 |
//! |---------------|-----------------------|-----------------------|
//! | marginal `M₀` | `1/n_s`               | `1/n_t`               |
//! | class `M_c`   | `1/n_s^c` on class c  | `1/n_t^c` on class c  |
//! | `R_min`       | `Y_s / n_s`           | `Ŷ_t / n_t`           |
//! | `R_max`       | `F_s / n_s`           | `F̂_t / n_t`           |
//!
//! so `tr(AᵀX R XᵀA) = ‖AᵀX_s B_s − AᵀX_t B_t‖_F²`, a sum of squared
//! differences of (weighted) projected class means.

use log::warn;

use crate::error::{Error, Result};
use crate::types::{class_counts, DomainPair, OneHotMatrix};
use crate::Matrix;

/// Ridge of the least-squares domain classifier behind the BDA weight.
pub const BDA_CLASSIFIER_RIDGE: f64 = 1e-3;

/// Symmetric PSD `n × n` coefficient matrix, source rows first.
#[derive(Debug, Clone, PartialEq)]
pub struct MmdMatrix {
    entries: Matrix,
    source_len: usize,
}

impl MmdMatrix {
    fn from_factor(factor: &Matrix, source_len: usize) -> Self {
        let mut m = Self::zeros(factor.nrows(), source_len);
        m.assign_from_factor(factor);
        m
    }

    pub(crate) fn zeros(n: usize, source_len: usize) -> Self {
        Self {
            entries: Matrix::zeros(n, n),
            source_len,
        }
    }

    /// Overwrites the entries with `factor · factorᵀ`, reusing the storage.
    pub(crate) fn assign_from_factor(&mut self, factor: &Matrix) {
        self.entries.gemm(1.0, factor, &factor.transpose(), 0.0);
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_matrix(self) -> Matrix {
        self.entries
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn asymmetry(&self) -> f64 {
        (&self.entries - self.entries.transpose()).amax()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let sym = (&self.entries + self.entries.transpose()) * 0.5;
        sym.symmetric_eigen().eigenvalues.min()
    }
}

/// Normalized label factors of the joint-probability MMD.
#[derive(Debug, Clone, PartialEq)]
pub struct JointProbFactors {
    /// `N_s = Y_s / n_s`, `n_s × C`.
    pub source_class: Matrix,
    /// `N_t = Ŷ_t / n_t`, `n_t × C`.
    pub target_class: Matrix,
    /// `F_s / n_s`, `n_s × C(C−1)`: block `c` repeats column `c` of `Y_s`.
    pub source_cross: Matrix,
    /// `F̂_t / n_t`, `n_t × C(C−1)`: block `c` is `Ŷ_t` without column `c`.
    pub target_cross: Matrix,
    /// Classes with no target pseudo-label; their columns are zero.
    pub missing_target_classes: Vec<usize>,
}

impl JointProbFactors {
    pub fn source_len(&self) -> usize {
        self.source_class.nrows()
    }

    pub fn class_count(&self) -> usize {
        self.source_class.ncols()
    }
}

pub fn build_joint_prob_factors(
    ys: &OneHotMatrix,
    yt_pseudo: &OneHotMatrix,
) -> Result<JointProbFactors> {
    let (ns, nt) = (ys.rows(), yt_pseudo.rows());
    if ns == 0 {
        return Err(Error::Empty("source label matrix"));
    }
    if nt == 0 {
        return Err(Error::Empty("target label matrix"));
    }
    let c_count = ys.class_count();
    if yt_pseudo.class_count() != c_count {
        return Err(Error::DimensionMismatch(format!(
            "source labels have {c_count} classes, target {}",
            yt_pseudo.class_count()
        )));
    }
    let ys = ys.as_matrix();
    let yt = yt_pseudo.as_matrix();
    let width = c_count * (c_count - 1);
    let mut fs = Matrix::zeros(ns, width);
    let mut ft = Matrix::zeros(nt, width);
    for c in 0..c_count {
        let others = (0..c_count).filter(|&o| o != c);
        for (k, other) in (c * (c_count - 1)..).zip(others) {
            fs.set_column(k, &ys.column(c));
            ft.set_column(k, &yt.column(other));
        }
    }
    let missing_target_classes = class_counts(yt_pseudo)
        .iter()
        .enumerate()
        .filter(|(_, &n)| n == 0)
        .map(|(c, _)| c)
        .collect();
    Ok(JointProbFactors {
        source_class: ys / ns as f64,
        target_class: yt / nt as f64,
        source_cross: fs / ns as f64,
        target_cross: ft / nt as f64,
        missing_target_classes,
    })
}

fn stack_signed(source: &Matrix, target: &Matrix) -> Matrix {
    let (ns, nt) = (source.nrows(), target.nrows());
    let mut b = Matrix::zeros(ns + nt, source.ncols());
    b.rows_mut(0, ns).copy_from(source);
    b.rows_mut(ns, nt).copy_from(&(-target));
    b
}

/// Same-class (transferability) matrix `R_min`, rank ≤ C.
pub fn build_rmin(factors: &JointProbFactors) -> MmdMatrix {
    let b = stack_signed(&factors.source_class, &factors.target_class);
    MmdMatrix::from_factor(&b, factors.source_len())
}

/// Cross-class (discriminability) matrix `R_max`, rank ≤ C(C−1).
pub fn build_rmax(factors: &JointProbFactors) -> MmdMatrix {
    let b = stack_signed(&factors.source_cross, &factors.target_cross);
    MmdMatrix::from_factor(&b, factors.source_len())
}

pub(crate) fn fill_rmin(factors: &JointProbFactors, out: &mut MmdMatrix) {
    out.assign_from_factor(&stack_signed(&factors.source_class, &factors.target_class));
}

pub(crate) fn fill_rmax(factors: &JointProbFactors, out: &mut MmdMatrix) {
    out.assign_from_factor(&stack_signed(&factors.source_cross, &factors.target_cross));
}

/// Marginal matrix `M₀`.
pub fn marginal_mmd_matrix(ns: usize, nt: usize) -> Result<MmdMatrix> {
    if ns == 0 || nt == 0 {
        return Err(Error::Empty(
            "domain (marginal MMD needs samples on both sides)",
        ));
    }
    let e = Matrix::from_fn(ns + nt, 1, |i, _| {
        if i < ns {
            1.0 / ns as f64
        } else {
            -1.0 / nt as f64
        }
    });
    Ok(MmdMatrix::from_factor(&e, ns))
}

/// Per-class conditional MMD matrices, stored as their `n × C` factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalMmd {
    factor: Matrix,
    source_len: usize,
    /// Classes empty in either domain; their matrices are zero.
    pub skipped: Vec<usize>,
}

impl ConditionalMmd {
    pub fn class_count(&self) -> usize {
        self.factor.ncols()
    }

    /// `M_c` for a single class.
    pub fn matrix(&self, class: usize) -> MmdMatrix {
        MmdMatrix::from_factor(&self.factor.columns(class, 1).into_owned(), self.source_len)
    }

    pub fn matrices(&self) -> Vec<MmdMatrix> {
        (0..self.class_count()).map(|c| self.matrix(c)).collect()
    }

    pub(crate) fn factor(&self) -> &Matrix {
        &self.factor
    }

    /// `Σ_c M_c` in one product.
    pub fn combined(&self) -> MmdMatrix {
        MmdMatrix::from_factor(&self.factor, self.source_len)
    }
}

pub fn conditional_mmd_matrices(
    ys: &OneHotMatrix,
    yt_pseudo: &OneHotMatrix,
) -> Result<ConditionalMmd> {
    let c_count = ys.class_count();
    if yt_pseudo.class_count() != c_count {
        return Err(Error::DimensionMismatch(format!(
            "source labels have {c_count} classes, target {}",
            yt_pseudo.class_count()
        )));
    }
    let (ns, nt) = (ys.rows(), yt_pseudo.rows());
    let (cs, ct) = (class_counts(ys), class_counts(yt_pseudo));
    let mut factor = Matrix::zeros(ns + nt, c_count);
    let mut skipped = Vec::new();
    for c in 0..c_count {
        if cs[c] == 0 || ct[c] == 0 {
            skipped.push(c);
            continue;
        }
        let (ws, wt) = (1.0 / cs[c] as f64, -1.0 / ct[c] as f64);
        for i in 0..ns {
            factor[(i, c)] = ys.as_matrix()[(i, c)] * ws;
        }
        for j in 0..nt {
            factor[(ns + j, c)] = yt_pseudo.as_matrix()[(j, c)] * wt;
        }
    }
    Ok(ConditionalMmd {
        factor,
        source_len: ns,
        skipped,
    })
}

/// `tr(AᵀX M XᵀA)` for a projection `a` (`d × p`) of the stacked features `x`
/// (`d × n`). Round-off negatives are clamped to zero.
pub fn projected_discrepancy(a: &Matrix, x: &Matrix, m: &MmdMatrix) -> Result<f64> {
    if a.nrows() != x.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "projection has {} rows, features have {}",
            a.nrows(),
            x.nrows()
        )));
    }
    if x.ncols() != m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} samples but MMD matrix is {}×{}",
            x.ncols(),
            m.dim(),
            m.dim()
        )));
    }
    let z = a.transpose() * x;
    Ok(clamp_trace(&z, m.as_matrix()))
}

/// `tr(Z M Zᵀ)` clamped at zero.
pub(crate) fn clamp_trace(z: &Matrix, m: &Matrix) -> f64 {
    let zm = z * m;
    let value = zm.dot(z);
    let scale: f64 = zm.iter().zip(z.iter()).map(|(a, b)| (a * b).abs()).sum();
    if value < 0.0 && value < -1e-10 * scale.max(1.0) {
        warn!("projected discrepancy {value:e} is negative beyond round-off");
    }
    value.max(0.0)
}

/// Balance weight of BDA with the A-distances it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct BdaWeight {
    pub mu: f64,
    pub marginal_distance: f64,
    pub class_distances: Vec<f64>,
    /// All distances vanished and `mu` fell back to 0.5.
    pub fallback: bool,
}

/// A-distance weight `μ = 1 − d_m / (d_m + Σ_c d_c)` with `d = 2(1 − 2ε)`,
/// `ε` the training error of a ridge least-squares source-vs-target classifier.
pub fn bda_weight(pair: &DomainPair, yt_pseudo: &OneHotMatrix) -> Result<BdaWeight> {
    let (ns, nt) = (pair.source_len(), pair.target_len());
    if ns < 2 || nt < 2 {
        return Err(Error::InvalidConfig(
            "BDA weight needs at least two samples per domain".into(),
        ));
    }
    if yt_pseudo.rows() != nt || yt_pseudo.class_count() != pair.class_count() {
        return Err(Error::DimensionMismatch(
            "pseudo-label matrix does not match the target domain".into(),
        ));
    }
    let xs = pair.source().features();
    let xt = pair.target_features();
    let all_s: Vec<usize> = (0..ns).collect();
    let all_t: Vec<usize> = (0..nt).collect();
    let marginal_distance = a_distance(xs, &all_s, xt, &all_t)?;

    let ys = pair.source().labels();
    let yt = yt_pseudo.labels();
    let class_distances = (0..pair.class_count())
        .map(|c| {
            let si: Vec<usize> = (0..ns).filter(|&i| ys[i] == c).collect();
            let ti: Vec<usize> = (0..nt).filter(|&j| yt[j] == c).collect();
            if si.is_empty() || ti.is_empty() {
                Ok(0.0)
            } else {
                a_distance(xs, &si, xt, &ti)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let total = marginal_distance + class_distances.iter().sum::<f64>();
    let (mu, fallback) = if total > 0.0 {
        (1.0 - marginal_distance / total, false)
    } else {
        warn!("all A-distances vanished; BDA weight falls back to 0.5");
        (0.5, true)
    };
    Ok(BdaWeight {
        mu,
        marginal_distance,
        class_distances,
        fallback,
    })
}

/// `2(1 − 2ε)` clamped to `[0, 2]` for the selected columns of the two domains.
fn a_distance(xs: &Matrix, si: &[usize], xt: &Matrix, ti: &[usize]) -> Result<f64> {
    let d = xs.nrows();
    let n = si.len() + ti.len();
    // rows are samples, last column is the bias
    let mut design = Matrix::zeros(n, d + 1);
    let mut target = nalgebra::DVector::zeros(n);
    for (row, &i) in si.iter().enumerate() {
        design
            .view_mut((row, 0), (1, d))
            .tr_copy_from(&xs.column(i));
        design[(row, d)] = 1.0;
        target[row] = 1.0;
    }
    for (k, &j) in ti.iter().enumerate() {
        let row = si.len() + k;
        design
            .view_mut((row, 0), (1, d))
            .tr_copy_from(&xt.column(j));
        design[(row, d)] = 1.0;
        target[row] = -1.0;
    }
    let mut normal = design.transpose() * &design;
    for i in 0..=d {
        normal[(i, i)] += BDA_CLASSIFIER_RIDGE;
    }
    let rhs = design.transpose() * &target;
    let w = normal
        .cholesky()
        .ok_or_else(|| Error::Numerical("domain classifier normal equations are singular".into()))?
        .solve(&rhs);
    let scores = &design * w;
    let errors = scores
        .iter()
        .zip(target.iter())
        .filter(|(s, t)| (**s >= 0.0) != (**t > 0.0))
        .count();
    let eps = errors as f64 / n as f64;
    Ok((2.0 * (1.0 - 2.0 * eps)).clamp(0.0, 2.0))
}
