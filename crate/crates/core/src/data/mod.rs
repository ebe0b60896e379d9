//! Tabular datasets: loading, scaling, PCA, splitting and synthetic stand-ins.

mod pca;
mod scaler;
mod split;
mod synth;
mod table;

pub use pca::{fit_pca, PcaModel};
pub use scaler::{fit_scaler, MinMaxScaler, Scaled};
pub use split::{split, split_indices, Partition, SplitSpec, DEFAULT_TEST_RATIO};
pub use synth::{synth_dataset, SynthKind};
pub use table::{load_table, save_table, table_to_string};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Feature matrix (rows = samples) plus target vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    features: Vec<Vec<f64>>,
    targets: Vec<f64>,
    feature_names: Vec<String>,
    target_name: String,
}

impl Dataset {
    /// Validates shape (N ≥ 1, d ≥ 1, rectangular) and finiteness.
    pub fn new(
        features: Vec<Vec<f64>>,
        targets: Vec<f64>,
        feature_names: Vec<String>,
        target_name: impl Into<String>,
    ) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::Data("dataset has no rows".into()));
        }
        if features.len() != targets.len() {
            return Err(Error::LengthMismatch(features.len(), targets.len()));
        }
        let d = feature_names.len();
        if d == 0 {
            return Err(Error::Data("dataset has no feature columns".into()));
        }
        for (i, row) in features.iter().enumerate() {
            if row.len() != d {
                return Err(Error::Data(format!("row {i} has {} values, expected {d}", row.len())));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Data(format!("non-finite feature at row {i}, column {}", feature_names[j])));
            }
        }
        if let Some(i) = targets.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!("non-finite target at row {i}")));
        }
        Ok(Self { features, targets, feature_names, target_name: target_name.into() })
    }

    /// Dataset with generated feature names `x0, x1, …` and target `y`.
    pub fn from_rows(features: Vec<Vec<f64>>, targets: Vec<f64>) -> Result<Self> {
        let d = features.first().map_or(0, Vec::len);
        Self::new(features, targets, (0..d).map(|j| format!("x{j}")).collect(), "y")
    }

    pub fn n_samples(&self) -> usize {
        self.targets.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn target_name(&self) -> &str {
        &self.target_name
    }

    /// Rows at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n_samples()) {
            return Err(Error::Data(format!("row index {bad} out of range for {} rows", self.n_samples())));
        }
        Self::new(
            indices.iter().map(|&i| self.features[i].clone()).collect(),
            indices.iter().map(|&i| self.targets[i]).collect(),
            self.feature_names.clone(),
            self.target_name.clone(),
        )
    }

    /// Same rows with a replaced feature matrix.
    pub fn with_features(&self, features: Vec<Vec<f64>>, names: Vec<String>) -> Result<Self> {
        Self::new(features, self.targets.clone(), names, self.target_name.clone())
    }

    pub fn with_targets(&self, targets: Vec<f64>) -> Result<Self> {
        Self::new(self.features.clone(), targets, self.feature_names.clone(), self.target_name.clone())
    }
}
