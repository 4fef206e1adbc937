//! Joint-probability MMD domain adaptation.
//!
//! The crate builds the discriminative joint-probability MMD (a same-class
//! transferability term minus a weighted cross-class discriminability term),
//! solves the JPDA subspace problem as a symmetric-definite generalized
//! eigenproblem, and provides TCA, JDA and BDA under one weighted
//! marginal-plus-conditional MMD so all four can be compared on equal footing.
//!
//! Features are stored column-per-sample (`d × n`) everywhere. Class labels are
//! 0-based inside the library; file formats use 1-based labels and convert at
//! the ingestion boundary.

pub mod adapt;
pub mod classify;
pub mod datagen;
pub mod eigensolve;
pub mod error;
pub mod kernels;
pub mod mmd;
pub mod types;

pub use adapt::{
    centering_matrix, fit, jpda_fit, transform, weighted_fit, BasisKind, FitOutcome, FitReport,
    IterationRecord, MmdWeights, Projection, StageTimes,
};
pub use classify::{accuracy, knn1_predict, PredictedLabels};
pub use datagen::{generate_pair, ShiftKind, ShiftSpec, SyntheticPair};
pub use eigensolve::{assemble_pencil, solve_trailing, EigenResult, SymmetricPencil};
pub use error::{Error, Result};
pub use kernels::{gram, resolve_bandwidth, Bandwidth, KernelKind, KernelSpec};
pub use mmd::{
    bda_weight, build_joint_prob_factors, build_rmax, build_rmin, conditional_mmd_matrices,
    marginal_mmd_matrix, projected_discrepancy, BdaWeight, ConditionalMmd, JointProbFactors,
    MmdMatrix,
};
pub use types::{
    class_counts, one_hot_encode, validate_pair, AdaptConfig, Algorithm, DomainPair,
    LabeledDataset, OneHotMatrix,
};

/// Dense column-major matrix used throughout the crate.
pub type Matrix = nalgebra::DMatrix<f64>;
