//! Shared data model: labeled datasets, one-hot label matrices, domain pairs
//! and the run configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::Matrix;

/// Features (`d × n`, one sample per column) with 0-based class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    features: Matrix,
    labels: Vec<usize>,
    class_count: usize,
}

impl LabeledDataset {
    pub fn new(features: Matrix, labels: Vec<usize>, class_count: usize) -> Result<Self> {
        if class_count < 2 {
            return Err(Error::InvalidConfig(format!(
                "class count must be at least 2, got {class_count}"
            )));
        }
        if features.ncols() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} feature columns but {} labels",
                features.ncols(),
                labels.len()
            )));
        }
        if let Some((index, &label)) = labels.iter().enumerate().find(|(_, &l)| l >= class_count) {
            return Err(Error::LabelOutOfRange {
                index,
                label,
                class_count,
            });
        }
        check_finite(&features, "features")?;
        Ok(Self {
            features,
            labels,
            class_count,
        })
    }

    /// Builds a dataset from labels in `1..=class_count`, the external convention.
    pub fn from_one_based(features: Matrix, labels: &[usize], class_count: usize) -> Result<Self> {
        let zero_based = labels
            .iter()
            .enumerate()
            .map(|(index, &l)| {
                if l == 0 || l > class_count {
                    Err(Error::LabelOutOfRange {
                        index,
                        label: l,
                        class_count,
                    })
                } else {
                    Ok(l - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(features, zero_based, class_count)
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn dim(&self) -> usize {
        self.features.nrows()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn one_hot(&self) -> OneHotMatrix {
        // labels were range-checked on construction
        one_hot_encode(&self.labels, self.class_count).expect("validated labels")
    }
}

/// `n × C` indicator matrix; row `i` has a single 1 in the column of sample `i`'s class.
#[derive(Debug, Clone, PartialEq)]
pub struct OneHotMatrix {
    entries: Matrix,
}

impl OneHotMatrix {
    pub fn as_matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn class_count(&self) -> usize {
        self.entries.ncols()
    }

    /// Recovers the label of every row (argmax decode).
    pub fn labels(&self) -> Vec<usize> {
        self.entries
            .row_iter()
            .map(|row| {
                row.iter()
                    .position(|&v| v == 1.0)
                    .expect("one-hot row has a single 1")
            })
            .collect()
    }
}

pub fn one_hot_encode(labels: &[usize], class_count: usize) -> Result<OneHotMatrix> {
    let mut entries = Matrix::zeros(labels.len(), class_count);
    for (index, &label) in labels.iter().enumerate() {
        if label >= class_count {
            return Err(Error::LabelOutOfRange {
                index,
                label,
                class_count,
            });
        }
        entries[(index, label)] = 1.0;
    }
    Ok(OneHotMatrix { entries })
}

/// Per-class sample counts (column sums of the indicator matrix).
pub fn class_counts(onehot: &OneHotMatrix) -> Vec<usize> {
    onehot
        .entries
        .column_iter()
        .map(|col| col.iter().filter(|&&v| v == 1.0).count())
        .collect()
}

/// Labeled source domain plus unlabeled target features over the same feature
/// and label spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainPair {
    source: LabeledDataset,
    target_features: Matrix,
}

impl DomainPair {
    pub fn source(&self) -> &LabeledDataset {
        &self.source
    }

    pub fn target_features(&self) -> &Matrix {
        &self.target_features
    }

    pub fn class_count(&self) -> usize {
        self.source.class_count
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn source_len(&self) -> usize {
        self.source.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_features.ncols()
    }

    pub fn total_len(&self) -> usize {
        self.source_len() + self.target_len()
    }

    /// `X = [X_s, X_t]`, `d × (n_s + n_t)`.
    pub fn stacked_features(&self) -> Matrix {
        let (d, ns, nt) = (self.dim(), self.source_len(), self.target_len());
        let mut x = Matrix::zeros(d, ns + nt);
        x.columns_mut(0, ns).copy_from(self.source.features());
        x.columns_mut(ns, nt).copy_from(&self.target_features);
        x
    }

    /// The same pair with source and target roles exchanged, labelling the old
    /// target with `target_labels`.
    pub fn swapped(&self, target_labels: Vec<usize>) -> Result<DomainPair> {
        let new_source = LabeledDataset::new(
            self.target_features.clone(),
            target_labels,
            self.class_count(),
        )?;
        validate_pair(new_source, self.source.features.clone())
    }
}

pub fn validate_pair(source: LabeledDataset, target_features: Matrix) -> Result<DomainPair> {
    if source.is_empty() {
        return Err(Error::Empty("source domain"));
    }
    if target_features.ncols() == 0 {
        return Err(Error::Empty("target domain"));
    }
    if source.dim() != target_features.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "source has {} features, target has {}",
            source.dim(),
            target_features.nrows()
        )));
    }
    check_finite(source.features(), "source features")?;
    check_finite(&target_features, "target features")?;
    Ok(DomainPair {
        source,
        target_features,
    })
}

pub(crate) fn check_finite(m: &Matrix, what: &'static str) -> Result<()> {
    for col in 0..m.ncols() {
        for row in 0..m.nrows() {
            if !m[(row, col)].is_finite() {
                return Err(Error::NonFinite { what, row, col });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Algorithm {
    Tca,
    Jda,
    Bda,
    Jpda,
    /// JPDA with the discriminative weight forced to zero.
    Jp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Tca,
        Algorithm::Jda,
        Algorithm::Bda,
        Algorithm::Jpda,
        Algorithm::Jp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Tca => "TCA",
            Algorithm::Jda => "JDA",
            Algorithm::Bda => "BDA",
            Algorithm::Jpda => "JPDA",
            Algorithm::Jp => "JP",
        }
    }

    pub fn is_joint_probability(self) -> bool {
        matches!(self, Algorithm::Jpda | Algorithm::Jp)
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm '{s}'")))
    }
}

/// Solver configuration shared by every algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaptConfig {
    pub algorithm: Algorithm,
    /// Subspace dimension.
    pub p: usize,
    /// Number of pseudo-label refinement iterations.
    pub iterations: usize,
    /// Weight of the discriminability term (JPDA only).
    pub mu: f64,
    /// Weight of the `‖A‖_F²` regularizer.
    pub lambda: f64,
    pub kernel: KernelSpec,
    /// Ridge added to the constraint matrix; `None` selects `1e-6 · tr(B) / m`.
    pub ridge: Option<f64>,
    pub seed: u64,
    /// BDA: compute the balance weight once from the initial pseudo-labels.
    pub freeze_bda_mu: bool,
}

impl Default for AdaptConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Jpda,
            p: 100,
            iterations: 10,
            mu: 0.1,
            lambda: 0.1,
            kernel: KernelSpec::primal(),
            ridge: None,
            seed: 0,
            freeze_bda_mu: false,
        }
    }
}

impl AdaptConfig {
    pub fn with_algorithm(mut self, algorithm: Algorithm) -> Self {
        self.algorithm = algorithm;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidConfig("p must be at least 1".into()));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidConfig(
                "iteration count must be at least 1".into(),
            ));
        }
        if !(self.mu >= 0.0 && self.mu.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "mu must be >= 0, got {}",
                self.mu
            )));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "lambda must be > 0, got {}",
                self.lambda
            )));
        }
        if let Some(r) = self.ridge {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(Error::InvalidConfig(format!("ridge must be >= 0, got {r}")));
            }
        }
        self.kernel.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn one_hot_rows() {
        // [1,2,1] with C=2, shifted to 0-based
        let oh = one_hot_encode(&[0, 1, 0], 2).unwrap();
        assert_eq!(
            oh.as_matrix(),
            &Matrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0])
        );
        let oh = one_hot_encode(&[2], 3).unwrap();
        assert_eq!(
            oh.as_matrix(),
            &Matrix::from_row_slice(1, 3, &[0.0, 0.0, 1.0])
        );
    }

    #[test]
    fn one_hot_rejects_out_of_range() {
        let err = one_hot_encode(&[0, 3], 3).unwrap_err();
        assert_eq!(
            err,
            Error::LabelOutOfRange {
                index: 1,
                label: 3,
                class_count: 3
            }
        );
    }

    #[test]
    fn counts() {
        assert_eq!(
            class_counts(&one_hot_encode(&[0, 1, 0], 2).unwrap()),
            vec![2, 1]
        );
        assert_eq!(
            class_counts(&one_hot_encode(&[1, 1], 3).unwrap()),
            vec![0, 2, 0]
        );
        assert_eq!(
            class_counts(&one_hot_encode(&[0, 1, 2], 3).unwrap()),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn pair_validation() {
        let src = LabeledDataset::new(Matrix::zeros(4, 3), vec![0, 1, 0], 2).unwrap();
        assert!(validate_pair(src.clone(), Matrix::zeros(4, 2)).is_ok());
        assert!(matches!(
            validate_pair(src.clone(), Matrix::zeros(5, 2)),
            Err(Error::DimensionMismatch(_))
        ));
        let mut tgt = Matrix::zeros(4, 2);
        tgt[(2, 1)] = f64::NAN;
        assert_eq!(
            validate_pair(src.clone(), tgt),
            Err(Error::NonFinite {
                what: "target features",
                row: 2,
                col: 1
            })
        );
        assert_eq!(
            validate_pair(src, Matrix::zeros(4, 0)),
            Err(Error::Empty("target domain"))
        );
    }

    #[test]
    fn one_based_ingestion() {
        let ds = LabeledDataset::from_one_based(Matrix::zeros(2, 3), &[1, 2, 2], 2).unwrap();
        assert_eq!(ds.labels(), &[0, 1, 1]);
        assert!(LabeledDataset::from_one_based(Matrix::zeros(2, 1), &[0], 2).is_err());
        assert!(LabeledDataset::from_one_based(Matrix::zeros(2, 1), &[3], 2).is_err());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().to_lowercase().parse::<Algorithm>().unwrap(), a);
        }
        assert!("SVM".parse::<Algorithm>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(AdaptConfig::default().validate().is_ok());
        let bad = AdaptConfig {
            lambda: 0.0,
            ..AdaptConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = AdaptConfig {
            mu: -0.1,
            ..AdaptConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    proptest! {
        #[test]
        fn counts_match_histogram(labels in proptest::collection::vec(0usize..5, 0..60)) {
            let oh = one_hot_encode(&labels, 5).unwrap();
            let mut hist = vec![0usize; 5];
            for &l in &labels {
                hist[l] += 1;
            }
            prop_assert_eq!(class_counts(&oh), hist);
            prop_assert_eq!(oh.labels(), labels);
        }
    }
}
