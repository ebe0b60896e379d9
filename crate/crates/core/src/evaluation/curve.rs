use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::MetricsReport;
use super::pipeline::{train_and_score, with_workers, Prepared, Preprocess};
use super::ridge::ridge_baseline;
use crate::circuits::CircuitSpec;
use crate::data::{split_indices, Dataset, SplitSpec, DEFAULT_TEST_RATIO};
use crate::error::{Error, Result};
use crate::training::SpsaConfig;

pub const DEFAULT_RATIOS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.8];
pub const DEFAULT_RIDGE_LAMBDA: f64 = 1.0;

/// Shared knobs for learning curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSettings {
    pub split_seed: u64,
    pub test_ratio: f64,
    pub preprocess: Preprocess,
    pub spsa: SpsaConfig,
    pub ridge_lambda: f64,
    pub workers: usize,
}

impl Default for CurveSettings {
    fn default() -> Self {
        Self {
            split_seed: 0,
            test_ratio: DEFAULT_TEST_RATIO,
            preprocess: Preprocess::default(),
            spsa: SpsaConfig::default(),
            ridge_lambda: DEFAULT_RIDGE_LAMBDA,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub train_ratio: f64,
    pub n_train: usize,
    pub n_test: usize,
    pub pqc: MetricsReport,
    pub ridge: MetricsReport,
    pub pqc_final_loss: f64,
    pub pqc_wall_time_seconds: f64,
    pub clipped_test: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningCurveResult {
    pub circuit: String,
    pub test_indices: Vec<usize>,
    pub points: Vec<CurvePoint>,
}

impl LearningCurveResult {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "train_ratio,n_train,n_test,pqc_r2_train,pqc_r2_test,pqc_mae_train,pqc_mae_test,ridge_r2_train,ridge_r2_test,ridge_mae_train,ridge_mae_test\n",
        );
        for p in &self.points {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                p.train_ratio, p.n_train, p.n_test, p.pqc.r2_train, p.pqc.r2_test, p.pqc.mae_train, p.pqc.mae_test,
                p.ridge.r2_train, p.ridge.r2_test, p.ridge.mae_train, p.ridge.mae_test
            ));
        }
        s
    }
}

pub fn validate_ratios(ratios: &[f64], test_ratio: f64) -> Result<()> {
    if ratios.is_empty() {
        return Err(Error::Config("learning curve needs at least one ratio".into()));
    }
    if ratios.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!("ratios {ratios:?} must be strictly increasing")));
    }
    let max = 1.0 - test_ratio + 1e-12;
    if let Some(r) = ratios.iter().find(|&&r| !(r > 0.0 && r <= max)) {
        return Err(Error::Config(format!("ratio {r} outside (0, {}]", 1.0 - test_ratio)));
    }
    Ok(())
}

/// PQC and ridge metrics for each training ratio against one fixed test
/// partition. Training rows for a smaller ratio are a subset of those for a
/// larger one.
pub fn learning_curve(
    dataset: &Dataset,
    ratios: &[f64],
    spec: &CircuitSpec,
    settings: &CurveSettings,
) -> Result<LearningCurveResult> {
    validate_ratios(ratios, settings.test_ratio)?;
    let partitions = ratios
        .iter()
        .map(|&r| {
            let p = split_indices(
                dataset.n_samples(),
                &SplitSpec { train_ratio: r, test_ratio: settings.test_ratio, seed: settings.split_seed },
            )?;
            if p.train.is_empty() {
                return Err(Error::Data(format!("ratio {r} gives no training rows for N = {}", dataset.n_samples())));
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    let test_indices = partitions[0].test.clone();
    debug_assert!(partitions.iter().all(|p| p.test == test_indices));
    let test = dataset.select(&test_indices)?;

    let points = with_workers(settings.workers, || {
        ratios
            .par_iter()
            .zip(&partitions)
            .map(|(&ratio, part)| {
                let train = dataset.select(&part.train)?;
                let prepared = Prepared::fit(&train, &test, settings.preprocess)?;
                let run = train_and_score(&prepared, spec, &settings.spsa)?;
                let ridge = ridge_baseline(&prepared.train_reduced, &prepared.test_reduced, settings.ridge_lambda)?;
                Ok(CurvePoint {
                    train_ratio: ratio,
                    n_train: part.train.len(),
                    n_test: test_indices.len(),
                    pqc: run.metrics,
                    ridge,
                    pqc_final_loss: run.record.final_loss().unwrap_or(f64::NAN),
                    pqc_wall_time_seconds: run.record.wall_time_seconds,
                    clipped_test: prepared.clipped_test,
                })
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(LearningCurveResult { circuit: spec.label(), test_indices, points })
}
