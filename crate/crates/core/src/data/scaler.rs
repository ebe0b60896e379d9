use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

/// Per-column min/max scaling to [-1, 1] for features and target.
///
/// A constant column maps to 0. Feature values that fall outside the fitted
/// range are clipped to [-1, 1] and counted; targets are never clipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinMaxScaler {
    pub feature_min: Vec<f64>,
    pub feature_max: Vec<f64>,
    pub target_min: f64,
    pub target_max: f64,
}

/// Result of scaling a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Scaled {
    pub dataset: Dataset,
    /// Feature values clipped back into [-1, 1].
    pub clipped: usize,
}

/// Fits the scaler on `train` only.
pub fn fit_scaler(train: &Dataset) -> MinMaxScaler {
    let d = train.n_features();
    let mut feature_min = vec![f64::INFINITY; d];
    let mut feature_max = vec![f64::NEG_INFINITY; d];
    for row in train.features() {
        for (j, &v) in row.iter().enumerate() {
            feature_min[j] = feature_min[j].min(v);
            feature_max[j] = feature_max[j].max(v);
        }
    }
    let (target_min, target_max) = train
        .targets()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    MinMaxScaler { feature_min, feature_max, target_min, target_max }
}

fn forward(v: f64, min: f64, max: f64) -> f64 {
    if max == min {
        0.0
    } else {
        2.0 * (v - min) / (max - min) - 1.0
    }
}

fn backward(s: f64, min: f64, max: f64) -> f64 {
    if max == min {
        min
    } else {
        (s + 1.0) * (max - min) / 2.0 + min
    }
}

impl MinMaxScaler {
    pub fn n_features(&self) -> usize {
        self.feature_min.len()
    }

    /// Scales feature rows, clipping to [-1, 1]. Returns rows and clip count.
    pub fn transform_features(&self, rows: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, usize)> {
        let mut clipped = 0;
        let out = rows
            .iter()
            .map(|row| {
                if row.len() != self.n_features() {
                    return Err(Error::Arity { what: "feature row", expected: self.n_features(), got: row.len() });
                }
                Ok(row
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| {
                        let s = forward(v, self.feature_min[j], self.feature_max[j]);
                        if s.abs() > 1.0 {
                            clipped += 1;
                            s.clamp(-1.0, 1.0)
                        } else {
                            s
                        }
                    })
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((out, clipped))
    }

    /// Scales feature rows without clipping.
    pub fn transform_features_unclipped(&self, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        rows.iter()
            .map(|row| {
                if row.len() != self.n_features() {
                    return Err(Error::Arity { what: "feature row", expected: self.n_features(), got: row.len() });
                }
                Ok(row.iter().enumerate().map(|(j, &v)| forward(v, self.feature_min[j], self.feature_max[j])).collect())
            })
            .collect()
    }

    pub fn inverse_features(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter()
            .map(|row| row.iter().enumerate().map(|(j, &s)| backward(s, self.feature_min[j], self.feature_max[j])).collect())
            .collect()
    }

    pub fn transform_targets(&self, y: &[f64]) -> Vec<f64> {
        y.iter().map(|&v| forward(v, self.target_min, self.target_max)).collect()
    }

    pub fn inverse_targets(&self, y: &[f64]) -> Vec<f64> {
        y.iter().map(|&s| backward(s, self.target_min, self.target_max)).collect()
    }

    /// Scales features and targets of `ds`.
    pub fn apply(&self, ds: &Dataset) -> Result<Scaled> {
        let (rows, clipped) = self.transform_features(ds.features())?;
        let dataset = Dataset::new(rows, self.transform_targets(ds.targets()), ds.feature_names().to_vec(), ds.target_name())?;
        Ok(Scaled { dataset, clipped })
    }

    /// Undoes [`apply`](Self::apply) (exact for unclipped, non-constant columns).
    pub fn invert(&self, ds: &Dataset) -> Result<Dataset> {
        Dataset::new(
            self.inverse_features(ds.features()),
            self.inverse_targets(ds.targets()),
            ds.feature_names().to_vec(),
            ds.target_name(),
        )
    }
}
