//! Symmetric-definite generalized eigenproblem `S a = η B a`.
//!
//! `B` is whitened by its Cholesky factor `L` (`B = L Lᵀ`), the standard
//! problem `L⁻¹ S L⁻ᵀ y = η y` is solved densely, and `a = L⁻ᵀ y`. The
//! returned vectors are therefore `B`-orthonormal.

use crate::error::{Error, Result};
use crate::Matrix;

/// Relative scale of the default ridge, `1e-6 · tr(B) / m`.
pub const DEFAULT_RIDGE_SCALE: f64 = 1e-6;

const SYMMETRY_TOL: f64 = 1e-10;

/// The pencil `(S, B)` of the trace-minimization problem.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricPencil {
    s: Matrix,
    b: Matrix,
}

impl SymmetricPencil {
    pub fn new(s: Matrix, b: Matrix) -> Result<Self> {
        if !s.is_square() || s.shape() != b.shape() {
            return Err(Error::DimensionMismatch(format!(
                "pencil matrices are {:?} and {:?}",
                s.shape(),
                b.shape()
            )));
        }
        check_symmetric(&s, "S")?;
        check_symmetric(&b, "B")?;
        Ok(Self { s, b })
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.s.nrows()
    }

    /// `1e-6 · tr(B) / m`.
    pub fn default_ridge(&self) -> f64 {
        DEFAULT_RIDGE_SCALE * self.b.trace() / self.dim().max(1) as f64
    }
}

fn check_symmetric(m: &Matrix, name: &str) -> Result<()> {
    let scale = m.amax();
    let asym = (m - m.transpose()).amax();
    if asym > SYMMETRY_TOL * scale {
        return Err(Error::NotSymmetric(format!(
            "{name} has asymmetry {asym:e} against scale {scale:e}"
        )));
    }
    Ok(())
}

pub(crate) fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Ascending generalized eigenvalues.
    pub values: Vec<f64>,
    /// `m × p`, column `k` pairs with `values[k]`.
    pub vectors: Matrix,
    /// `‖S v − η (B + ridge·I) v‖₂` per pair.
    pub residual_norms: Vec<f64>,
    /// Ridge that was added to `B`.
    pub ridge: f64,
}

/// The `p` algebraically smallest eigenpairs of `(S, B + ridge·I)`.
///
/// Each eigenvector is signed so that its largest-magnitude entry (first one
/// on ties) is positive.
pub fn solve_trailing(pencil: &SymmetricPencil, p: usize, ridge: f64) -> Result<EigenResult> {
    let m = pencil.dim();
    if p == 0 || p > m {
        return Err(Error::InvalidConfig(format!(
            "requested {p} eigenpairs of a {m}×{m} pencil"
        )));
    }
    if !(ridge >= 0.0 && ridge.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "ridge must be >= 0, got {ridge}"
        )));
    }
    let mut b = pencil.b.clone();
    for i in 0..m {
        b[(i, i)] += ridge;
    }
    let chol = b
        .clone()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite { ridge })?;
    let l = chol.l();

    // C = L⁻¹ S L⁻ᵀ = L⁻¹ (L⁻¹ S)ᵀ since S is symmetric
    let ls = l
        .solve_lower_triangular(&pencil.s)
        .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
    let c = l
        .solve_lower_triangular(&ls.transpose())
        .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
    let eig = symmetrize(&c).symmetric_eigen();
    if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("non-finite eigenvalue".into()));
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    order.truncate(p);

    let mut y = Matrix::zeros(m, p);
    for (k, &idx) in order.iter().enumerate() {
        y.set_column(k, &eig.eigenvectors.column(idx));
    }
    let mut vectors = l
        .transpose()
        .solve_upper_triangular(&y)
        .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
    for mut col in vectors.column_iter_mut() {
        let pivot = col.iter().enumerate().fold((0, 0.0f64), |best, (i, &v)| {
            if v.abs() > best.1 {
                (i, v.abs())
            } else {
                best
            }
        });
        if col[pivot.0] < 0.0 {
            col.neg_mut();
        }
    }
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let sv = &pencil.s * &vectors;
    let bv = &b * &vectors;
    let residual_norms = values
        .iter()
        .enumerate()
        .map(|(k, &eta)| (sv.column(k) - bv.column(k) * eta).norm())
        .collect();
    Ok(EigenResult {
        values,
        vectors,
        residual_norms,
        ridge,
    })
}

/// `S = X M Xᵀ + λI` and `B = X H Xᵀ`, both symmetrized, for any coefficient
/// matrix `M`.
pub(crate) fn assemble_from_coefficients(
    x: &Matrix,
    coefficients: &Matrix,
    lambda: f64,
    h: &Matrix,
) -> Result<SymmetricPencil> {
    let n = x.ncols();
    if coefficients.shape() != (n, n) || h.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "{n} samples but coefficient matrix {:?} and centering matrix {:?}",
            coefficients.shape(),
            h.shape()
        )));
    }
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "lambda must be > 0, got {lambda}"
        )));
    }
    let mut s = x * coefficients * x.transpose();
    for i in 0..s.nrows() {
        s[(i, i)] += lambda;
    }
    let b = x * h * x.transpose();
    Ok(SymmetricPencil {
        s: symmetrize(&s),
        b: symmetrize(&b),
    })
}

/// JPDA pencil: `S = X(R_min − μR_max)Xᵀ + λI`, `B = XHXᵀ`.
///
/// For the kernelized objective pass the `n × n` Gram matrix as `x`.
pub fn assemble_pencil(
    x: &Matrix,
    rmin: &crate::mmd::MmdMatrix,
    rmax: &crate::mmd::MmdMatrix,
    mu: f64,
    lambda: f64,
    h: &Matrix,
) -> Result<SymmetricPencil> {
    if rmin.dim() != rmax.dim() {
        return Err(Error::DimensionMismatch(format!(
            "R_min is {0}×{0}, R_max is {1}×{1}",
            rmin.dim(),
            rmax.dim()
        )));
    }
    let coefficients = if mu == 0.0 {
        rmin.as_matrix().clone()
    } else {
        rmin.as_matrix() - rmax.as_matrix() * mu
    };
    assemble_from_coefficients(x, &coefficients, lambda, h)
}
