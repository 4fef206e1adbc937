//! Two-dimensional PCA of projected features for plotting.

use jpda_core::Matrix;
use nalgebra::SymmetricEigen;

use crate::error::{HarnessError, Result};

/// Scores of the top two principal components of `z` (`p × n`), as `2 × n`.
///
/// Each component's sign is fixed so its largest-magnitude loading is positive.
pub fn pca2(z: &Matrix) -> Result<Matrix> {
    if z.nrows() < 2 {
        return Err(HarnessError::Data(format!(
            "projection has {} dimension(s); embed2d needs p >= 2, rerun with a larger p",
            z.nrows()
        )));
    }
    if z.ncols() < 2 {
        return Err(HarnessError::Data(
            "embed2d needs at least two samples".into(),
        ));
    }
    let mean = z.column_mean();
    let mut centered = z.clone();
    for mut col in centered.column_iter_mut() {
        col -= &mean;
    }
    let cov = &centered * centered.transpose() / (z.ncols() as f64 - 1.0);
    let scale = z
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    if cov.trace() <= 1e-24 * scale * scale {
        return Err(HarnessError::Data(
            "projected data has zero variance; PCA is degenerate".into(),
        ));
    }
    let eig = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut basis = Matrix::zeros(z.nrows(), 2);
    for (k, &idx) in order.iter().take(2).enumerate() {
        let mut v = eig.eigenvectors.column(idx).into_owned();
        let pivot = v.iamax();
        if v[pivot] < 0.0 {
            v.neg_mut();
        }
        basis.set_column(k, &v);
    }
    Ok(basis.transpose() * centered)
}
