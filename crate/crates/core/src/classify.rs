//! Deterministic 1-nearest-neighbor classification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Matrix;

/// Predicted 0-based labels for each target column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedLabels {
    pub labels: Vec<usize>,
    /// Iteration that produced the labels; 0 for the raw-feature initialization.
    pub iteration: usize,
}

/// Labels every column of `test_x` with the label of its nearest column in
/// `train_x` under squared Euclidean distance. Ties go to the smallest
/// training index.
pub fn knn1_predict(train_x: &Matrix, train_y: &[usize], test_x: &Matrix) -> Result<Vec<usize>> {
    if train_x.ncols() == 0 {
        return Err(Error::Empty("training set"));
    }
    if train_x.ncols() != train_y.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} training columns but {} labels",
            train_x.ncols(),
            train_y.len()
        )));
    }
    if train_x.nrows() != test_x.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "train has {} rows, test has {}",
            train_x.nrows(),
            test_x.nrows()
        )));
    }
    // ‖a−b‖² = ‖a‖² + ‖b‖² − 2aᵀb; the test norm is constant per column and dropped
    let train_sq: Vec<f64> = train_x.column_iter().map(|c| c.norm_squared()).collect();
    let cross = train_x.transpose() * test_x;
    let labels = (0..test_x.ncols())
        .map(|j| {
            let col = cross.column(j);
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (i, (&sq, &dot)) in train_sq.iter().zip(col.iter()).enumerate() {
                let d = sq - 2.0 * dot;
                if d < best_d {
                    best_d = d;
                    best = i;
                }
            }
            train_y[best]
        })
        .collect();
    Ok(labels)
}

/// Fraction of positions where `pred` and `truth` agree.
pub fn accuracy(pred: &[usize], truth: &[usize]) -> Result<f64> {
    if pred.len() != truth.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} predictions but {} true labels",
            pred.len(),
            truth.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::Empty("label vector"));
    }
    let hits = pred.iter().zip(truth).filter(|(a, b)| a == b).count();
    Ok(hits as f64 / pred.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::CounterRng;

    #[test]
    fn nearest_wins() {
        let train = Matrix::from_row_slice(1, 2, &[0.0, 10.0]);
        let test = Matrix::from_row_slice(1, 1, &[1.0]);
        assert_eq!(knn1_predict(&train, &[0, 1], &test).unwrap(), vec![0]);
    }

    #[test]
    fn tie_goes_to_smaller_index() {
        let train = Matrix::from_row_slice(1, 2, &[-1.0, 1.0]);
        let test = Matrix::from_row_slice(1, 1, &[0.0]);
        assert_eq!(knn1_predict(&train, &[1, 0], &test).unwrap(), vec![1]);
    }

    #[test]
    fn empty_training_set() {
        let r = knn1_predict(&Matrix::zeros(2, 0), &[], &Matrix::zeros(2, 1));
        assert_eq!(r, Err(Error::Empty("training set")));
    }

    #[test]
    fn matches_exhaustive_scan() {
        let mut rng = CounterRng::new(42);
        let train = Matrix::from_fn(3, 30, |_, _| rng.next_gaussian());
        let test = Matrix::from_fn(3, 30, |_, _| rng.next_gaussian());
        let labels: Vec<usize> = (0..30).map(|i| i % 4).collect();
        let got = knn1_predict(&train, &labels, &test).unwrap();
        for j in 0..30 {
            let mut best = (f64::INFINITY, 0);
            for i in 0..30 {
                let d: f64 = (0..3).map(|r| (train[(r, i)] - test[(r, j)]).powi(2)).sum();
                if d < best.0 {
                    best = (d, i);
                }
            }
            assert_eq!(got[j], labels[best.1]);
        }
    }

    #[test]
    fn training_set_recovers_own_labels() {
        let mut rng = CounterRng::new(8);
        let x = Matrix::from_fn(4, 25, |_, _| rng.next_gaussian());
        let y: Vec<usize> = (0..25).map(|i| (i * 7) % 3).collect();
        assert_eq!(knn1_predict(&x, &y, &x).unwrap(), y);
    }

    #[test]
    fn invariant_under_rotation() {
        let mut rng = CounterRng::new(11);
        let train = Matrix::from_fn(5, 40, |_, _| rng.next_gaussian());
        let test = Matrix::from_fn(5, 15, |_, _| rng.next_gaussian());
        let y: Vec<usize> = (0..40).map(|i| i % 3).collect();
        let q = Matrix::from_fn(5, 5, |_, _| rng.next_gaussian()).qr().q();
        assert!((q.transpose() * &q - Matrix::identity(5, 5)).amax() < 1e-10);
        let before = knn1_predict(&train, &y, &test).unwrap();
        let after = knn1_predict(&(&q * &train), &y, &(&q * &test)).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn accuracy_values() {
        assert_eq!(accuracy(&[0, 1, 2], &[0, 1, 2]).unwrap(), 1.0);
        assert_eq!(accuracy(&[0, 0], &[1, 1]).unwrap(), 0.0);
        assert!((accuracy(&[0, 1, 2], &[0, 1, 3]).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(accuracy(&[0], &[0, 1]).is_err());
    }
}
